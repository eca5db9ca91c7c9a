#include "dsmkit/presets.hpp"

#include <string>

#include "dsmkit/errors.hpp"

namespace dsmkit {

StateSpace state_space_preset(std::string_view name) {
  if (name == "dsm1") {
    Eigen::MatrixXd a(1, 1);
    a << 1.0;
    Eigen::VectorXd b(1);
    b << 1.0;
    Eigen::RowVectorXd c(1);
    c << 1.0;
    return StateSpace(a, b, c);
  }
  if (name == "dsm2") {
    Eigen::MatrixXd a(2, 2);
    a << 2.0, -1.0, 1.0, 0.0;
    Eigen::VectorXd b(2);
    b << 1.0, 0.0;
    Eigen::RowVectorXd c(2);
    c << 1.0, 0.0;
    return StateSpace(a, b, c);
  }
  throw DomainError("unknown filter preset: " + std::string(name) +
                    " (known: dsm1, dsm2)");
}

}  // namespace dsmkit
