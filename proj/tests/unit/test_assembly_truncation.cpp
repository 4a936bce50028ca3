#include <doctest.h>

#include <cstdio>

#include "dtnembed/assembly.hpp"

using namespace dtnembed;

// Every assembled entry should move by less than 1e-10 when the Steklov
// truncation doubles from its default.
TEST_CASE("Steklov truncation stability") {
  const CompositeDomain domain = make_domain(1.0, 1.5);
  const int n = kDefaultSteklovTruncation;
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    const BasisSpec spec{parity, 1.0, 1.0, 15, 15};
    const QuadratureConfig base{};
    const Assembler a(spec, domain, base, n);
    const Assembler b(spec, domain, QuadratureConfig{base.n_r, base.n_phi, 2 * base.n_s}, 2 * n);
    const double kappa = parity == Parity::Even ? 2.0611 : 3.4507;
    for (Method method : {Method::DtN, Method::NtD}) {
      const auto pa = a.assemble(method, kappa);
      const auto pb = b.assemble(method, kappa);
      const double dl = (pa.lambda - pb.lambda).cwiseAbs().maxCoeff();
      const double dd = (pa.delta - pb.delta).cwiseAbs().maxCoeff();
      std::printf("%s %s: max entry change lambda %.3e delta %.3e\n", std::string(to_string(parity)).c_str(),
                  std::string(to_string(method)).c_str(), dl, dd);
      CHECK(dl < 1e-10);
      CHECK(dd < 1e-10);
    }
  }
}
