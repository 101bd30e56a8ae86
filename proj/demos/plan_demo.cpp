// Minimal library walkthrough: generate an instance, plan it, validate the
// plan, then execute it in a world with unknown obstacles.

#include <iostream>

#include "airferry/airferry.hpp"

int main() {
  using namespace airferry;

  // A 4 km square with one carrier/monitor team and 12 monitoring points.
  Scenario sc = generate_instance(/*seed=*/7, /*n=*/12, /*m=*/1);
  sc.params.margin_air = 60.0;    // reserve 60 s of flight budget
  sc.params.margin_ground = 60.0; // reserve 60 s of carrier transfer slack

  const MissionPlan plan = plan_mission(sc);
  std::cout << "planned objective: " << objective(sc.env, sc.params, plan)
            << " s\n";

  const ValidationReport report = validate(sc, plan);
  std::cout << "validation: " << (report.pass ? "PASS" : "FAIL") << " ("
            << report.entries.size() << " checks)\n";

  // Drop three unknown boxes into the world and re-execute the same plan;
  // release/collect points are nudged within the certified budgets.
  const TrueWorld world = make_true_world(sc, /*seed=*/99, /*count=*/3,
                                          /*max_size=*/250.0);
  const ExecutionReport run = execute(world, sc.params, plan);
  std::cout << "realized objective: " << run.realized_objective << " s, "
            << run.violation_count << " violations, certified="
            << (run.all_certified ? "yes" : "no") << "\n";
  return report.pass && run.success ? 0 : 1;
}
