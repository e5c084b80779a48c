// Classifies the bicovariant calculi of S3 on both sides, then looks inside the
// 3-dimensional transposition calculus.
#include "qtangent/report.hpp"

#include <iostream>

using namespace qtangent;

int main() {
  const auto g = named_group("S3");
  std::cout << render(classify(g, Side::Functions), "text");
  std::cout << render(classify(g, Side::GroupAlgebra), "text");

  QuantumDouble<Rational> qd(HopfPair<Rational>(std::make_shared<const FiniteGroup>(g)), Side::Functions);
  FirstOrderCalculus<Rational> calc(class_tangents(qd)[0]);
  std::cout << "\ntransposition calculus: dim " << calc.dim() << ", Gamma dim " << calc.gamma_dim()
            << ", rank(1 - Psi) on L(x)L = " << calc.exterior_rank2() << "\n";
  for (std::size_t i = 0; i < calc.dim(); ++i) std::cout << "  x" << i << " = " << element_str(g, calc.basis(i)) << "\n";

  // d f for f(u) = u index squared, as components along the basis of L
  HopfElement<Rational> f(Basis::Function);
  for (std::size_t u = 0; u < g.order(); ++u) f.add(u, Rational(static_cast<long>(u * u)));
  for (std::size_t i = 0; i < calc.dim(); ++i) std::cout << "  d_x" << i << " f = " << element_str(g, calc.partial(i, f)) << "\n";

  if (auto w = calc.unbraided_leibniz_witness()) std::cout << "unbraided Leibniz rule fails at " << *w << "\n";
  return 0;
}
