#include "znsim/lattice.hpp"

#include <string>

namespace znsim {

namespace {
int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

LatticeGeometry::LatticeGeometry(int lx, int ly) : lx_(lx), ly_(ly) {
  if (lx < 2 || ly < 2) {
    throw TooSmallError("TooSmall: lattice dimensions must be at least 2, got " +
                        std::to_string(lx) + "x" + std::to_string(ly));
  }
  if (lx % 2 != 0 || ly % 2 != 0) {
    throw OddDimensionError("OddDimension: periodic staggering needs even dimensions, got " +
                            std::to_string(lx) + "x" + std::to_string(ly));
  }
}

Site LatticeGeometry::wrap(Site s) const {
  return {mod(s.x1, lx_), mod(s.x2, ly_)};
}

int LatticeGeometry::siteIndex(Site s) const {
  Site w = wrap(s);
  return w.x1 + lx_ * w.x2;
}

Site LatticeGeometry::site(int index) const {
  return {index % lx_, index / lx_};
}

Site LatticeGeometry::neighbor(Site s, int direction, int steps) const {
  if (direction == 1) return wrap({s.x1 + steps, s.x2});
  return wrap({s.x1, s.x2 + steps});
}

int LatticeGeometry::linkIndex(Link l) const {
  return 2 * siteIndex(l.origin) + (l.direction - 1);
}

Link LatticeGeometry::link(int index) const {
  return {site(index / 2), index % 2 + 1};
}

Parity LatticeGeometry::siteParity(Site s) const {
  Site w = wrap(s);
  return (w.x1 + w.x2) % 2 == 0 ? Parity::Even : Parity::Odd;
}

LinkClass LatticeGeometry::linkClass(Link l) const {
  bool even = siteParity(l.origin) == Parity::Even;
  bool horizontal = l.direction == 1;
  if (even) return horizontal ? LinkClass::EvenHorizontal : LinkClass::EvenVertical;
  return horizontal ? LinkClass::OddHorizontal : LinkClass::OddVertical;
}

std::array<Link, 4> LatticeGeometry::plaquetteLinks(Plaquette p) const {
  Site x = wrap(p.corner);
  return {Link{x, 1}, Link{neighbor(x, 1), 2}, Link{neighbor(x, 2), 1}, Link{x, 2}};
}

std::vector<Link> LatticeGeometry::links() const {
  std::vector<Link> out;
  out.reserve(numLinks());
  for (int i = 0; i < numLinks(); ++i) out.push_back(link(i));
  return out;
}

std::vector<Plaquette> LatticeGeometry::plaquettes() const {
  std::vector<Plaquette> out;
  out.reserve(numPlaquettes());
  for (int i = 0; i < numSites(); ++i) out.push_back({site(i)});
  return out;
}

std::vector<Plaquette> LatticeGeometry::plaquettesByParity(Parity parity) const {
  std::vector<Plaquette> out;
  for (const Plaquette& p : plaquettes()) {
    if (plaquetteParity(p) == parity) out.push_back(p);
  }
  return out;
}

std::vector<Link> LatticeGeometry::linksByClass(LinkClass cls) const {
  std::vector<Link> out;
  for (const Link& l : links()) {
    if (linkClass(l) == cls) out.push_back(l);
  }
  return out;
}

LatticeGeometry build_geometry(int lx, int ly) { return LatticeGeometry(lx, ly); }

}  // namespace znsim
