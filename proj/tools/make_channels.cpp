// Regenerates the bundled channel artifacts under channels/.
#include <iostream>

#include "qbc/json_io.hpp"

using namespace qbc;

namespace {

Eigen::MatrixXd bsc_cascade(double q1, double q2) {
  // x -> y1 via BSC(q1), y1 -> y2 via BSC(q2); kernel column index y1*2+y2
  Eigen::MatrixXd k(2, 4);
  for (int x = 0; x < 2; ++x)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int y2 = 0; y2 < 2; ++y2)
        k(x, y1 * 2 + y2) =
            (y1 == x ? 1 - q1 : q1) * (y2 == y1 ? 1 - q2 : q2);
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "channels";

  save_json(broadcast_to_json(classical_broadcast(bsc_cascade(0.1, 0.15), 2, 2)),
            dir + "/bsc_cascade.json");

  Matrix plus = Matrix::Constant(2, 2, 0.5);
  std::vector<Matrix> povm = {plus, Matrix::Identity(2, 2) - plus};
  Matrix s0 = Matrix::Zero(2, 2), s1 = Matrix::Zero(2, 2);
  s0(0, 0) = 0.8;
  s0(1, 1) = 0.2;
  s1(0, 0) = 0.3;
  s1(1, 1) = 0.7;
  save_json(broadcast_to_json(hadamard_broadcast(povm, {s0, s1})),
            dir + "/hadamard.json");

  save_json(broadcast_to_json(qubit_dephasing_broadcast(0.1, 0.2)),
            dir + "/dephasing.json");
  save_json(broadcast_to_json(erasure_broadcast(0.25, 0.75)), dir + "/erasure.json");
  save_json(broadcast_to_json(route_to_b1(Matrix::Identity(2, 2) / 2.0)),
            dir + "/routing.json");

  std::cout << "wrote 5 channel artifacts to " << dir << "\n";
  return 0;
}
