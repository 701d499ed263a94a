// Loads an instance file and evaluates a list of bounds on it.
//
//   bound_report samples/data/three_point.json tw1i tw2i ss1

#include <iostream>
#include <string>

#include "sugeno.hpp"

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: bound_report <instance.json> <bound id>...\n";
    return 1;
  }
  try {
    const sugeno::BoundInstance in = sugeno::io::instance_from_json(sugeno::io::load_json_file(argv[1]));
    for (int i = 2; i < argc; ++i) {
      const sugeno::BoundReport r = sugeno::check_bound(in, argv[i]);
      std::cout << r.id << ": lhs " << r.lhs << ", rhs " << r.rhs << ", slack " << r.slack
                << (r.hypotheses_hold() ? "" : " (hypotheses fail)") << (r.holds ? "" : " VIOLATED") << "\n";
    }
  } catch (const sugeno::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
