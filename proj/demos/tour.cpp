// A short tour of the library: Hessians, the Hesse pencil, Waring recovery and fibre counts.

#include <iostream>

#include "hessmap/binary_forms.hpp"
#include "hessmap/ff_lab.hpp"
#include "hessmap/hessian.hpp"
#include "hessmap/ternary_cubics.hpp"
#include "hessmap/waring.hpp"

using namespace hessmap;

int main() {
  std::cout << "== Hessians\n";
  for (const char* text : {"x0*x1*x2", "x0^3 + x1^3 + x2^3", "x1^2*x2 - x0^3"}) {
    auto f = parse_poly(text, 3);
    std::cout << "hess(" << text << ") = " << print_poly(hess(f)) << "\n";
  }
  auto perazzo = parse_poly("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5);
  auto c = cone_test(perazzo);
  std::cout << "Perazzo cubic: hessian vanishes = " << std::boolalpha << hessian(perazzo).vanished
            << ", polar rank " << c.polar_rank << ", cone = " << c.is_cone << "\n";

  std::cout << "\n== Hesse pencil x0^3 + x1^3 + x2^3 - 3t x0x1x2\n";
  ProjParam t = ProjParam::affine(2);
  for (int step = 0; step < 4; ++step) {
    auto s = pencil_hessian_param(t);
    std::cout << "t = [" << t.str() << "] -> s = [" << s.str() << "]\n";
    t = s;
  }
  std::cout << "fixed points: " << print_poly(pencil_fixed_point_form()) << " = 0\n";
  std::cout << "Aronhold S on the pencil vanishes at t = 0: "
            << is_zero(aronhold_invariant()(hesse_member(ProjParam::affine(0)))) << "\n";

  std::cout << "\n== Waring forms\n";
  auto w = WaringForm::standard(2, 3, std::vector<Rational>{1, 2, 3, 4});
  auto H = hess(w.form());
  std::cout << "f = " << print_poly(w.form()) << "\n";
  std::cout << "hess(f) / 216 = " << print_poly(closed_form_hessian(w)) << "\n";
  std::cout << "recovered c:";
  for (const auto& x : recover_coefficients(H, w.L, w.d)) std::cout << " " << x;
  std::cout << "\n";

  std::cout << "\n== Binary quartics over F_7\n";
  auto rep = enumerate_fibers("h41", 7);
  std::cout << rep.domain << " points, " << rep.indeterminate << " with vanishing hessian\n";
  for (const auto& [size, count] : rep.histogram) std::cout << "  " << count << " images with " << size << " preimages\n";
  std::cout << "largest fibre without a square factor in the image: " << rep.max_unflagged_fiber << "\n";
  return 0;
}
