#pragma once

#include "dgt/dg_lie.hpp"
#include "support/fixtures.hpp"

namespace fixtures {

// x (0), y (-1), z (-1), w (-2); dx = y; zero bracket.
inline DGLieAlgebra abelian(RingPtr r) {
  return build_dgl({r, {{"x", 0}, {"y", -1}, {"z", -1}, {"w", -2}}, {{"x", "y", r->one()}}, {}});
}

// f (-1), e (-2), df = e, zero bracket.
inline DGLieAlgebra line(RingPtr r) { return build_dgl({r, {{"f", -1}, {"e", -2}}, {{"f", "e", r->one()}}, {}}); }

// e (0), f (-1), [e,f] = f, de = f.
inline DGLieAlgebra g2(RingPtr r) {
  return build_dgl({r, {{"e", 0}, {"f", -1}}, {{"e", "f", r->one()}}, {{"e", "f", "f", r->one()}}});
}

// e (0), f (-1), g (-1), c (-2); de = g, [f,f] = c. H_{-2} = k·c.
inline DGLieAlgebra obstructed(RingPtr r) {
  return build_dgl({r, {{"e", 0}, {"f", -1}, {"g", -1}, {"c", -2}}, {{"e", "g", r->one()}}, {{"f", "f", "c", r->one()}}});
}

// e (0), f (-1), h (-1); [e,f] = f, [e,h] = -h, de = h.
inline DGLieAlgebra weighted(RingPtr r) {
  return build_dgl({r,
                    {{"e", 0}, {"f", -1}, {"h", -1}},
                    {{"e", "h", r->one()}},
                    {{"e", "f", "f", r->one()}, {"e", "h", "h", -r->one()}}});
}

// 1, a (-1), b (-1), c (-2); a·a = c, Db = c.
inline DGAlgebra cup(RingPtr r) {
  return build_dga({r, {{"1", 0}, {"a", -1}, {"b", -1}, {"c", -2}}, {{"b", "c", r->one()}}, {{"a", "a", "c", r->one()}}, "1"});
}

// Filiform Lie algebra in degree 0: [x, y_i] = y_{i+1}, nilpotent of class `cls`.
inline DGLieAlgebra filiform(RingPtr r, int cls) {
  DGLieSpec s{r, {{"x", 0}}, {}, {}};
  for (int i = 1; i <= cls; ++i) s.basis.push_back({"y" + std::to_string(i), 0});
  for (int i = 1; i < cls; ++i) s.bracket.push_back({"x", "y" + std::to_string(i), "y" + std::to_string(i + 1), r->one()});
  return build_dgl(s);
}

}  // namespace fixtures
