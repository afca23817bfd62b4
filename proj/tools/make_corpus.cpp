// Writes cubic surfaces a*l1 + b*l2 with small random quadrics a, b that are certified non-ruled
// (smooth modulo one of the default primes), one per line, after the Fermat cubic.
#include <iostream>
#include <random>

#include "ccq/cubic_conics.hpp"

using namespace ccq;

int main(int argc, char** argv) {
  const int want = argc > 1 ? std::stoi(argv[1]) : 12;
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 20240611;
  const auto names = default_names(4, "T");
  auto T = [&](const std::string& s) { return parse_poly(s, 4, names); };
  const std::vector<std::pair<MultiPoly, MultiPoly>> lines{
      {T("T0"), T("T1")}, {T("T2"), T("T3")}, {T("T0 - T2"), T("T1 + T3")}, {T("T0 + T1"), T("T2 - T3")}};

  std::cout << "# cubic surfaces with a rational line, certified non-ruled\n";
  std::cout << to_text(T("T0^3 + T1^3 + T2^3 + T3^3"), names) << "\n";
  std::mt19937_64 rng(seed);
  int found = 1;
  for (int it = 0; found < want && it < 10000; ++it) {
    const auto& [l1, l2] = lines[static_cast<std::size_t>(it) % lines.size()];
    MultiPoly q[2] = {MultiPoly(4), MultiPoly(4)};
    for (auto& p : q)
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b)
          for (int c = 0; a + b + c <= 2; ++c)
            if (rng() % 3 == 0) p.add_term({a, b, c, 2 - a - b - c}, static_cast<long>(rng() % 5) - 2);
    const MultiPoly f = primitive_normalize(q[0] * l1 + q[1] * l2).first;
    if (f.total_degree() != 3) continue;
    const auto cls = classify_cubic(f);
    if (!cls.non_ruled || cls.non_ruled_confidence != Confidence::certified) continue;
    if (find_lines(f, 1).empty()) continue;
    std::cout << to_text(f, names) << "\n";
    ++found;
  }
  return found == want ? 0 : 1;
}
