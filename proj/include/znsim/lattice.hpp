#pragma once

#include <array>
#include <vector>

#include "znsim/errors.hpp"

namespace znsim {

enum class Parity { Even, Odd };

enum class LinkClass { EvenHorizontal, EvenVertical, OddHorizontal, OddVertical };

struct Site {
  int x1 = 0;
  int x2 = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

// direction: 1 = horizontal (+x1), 2 = vertical (+x2)
struct Link {
  Site origin;
  int direction = 1;
  friend bool operator==(const Link&, const Link&) = default;
};

struct Plaquette {
  Site corner;  // lower-left corner
  friend bool operator==(const Plaquette&, const Plaquette&) = default;
};

// Periodic 2D lattice with even dimensions. Sites are enumerated row-major,
// index(x1,x2) = x1 + Lx*x2; links site-major then direction,
// index(link) = 2*siteIndex(origin) + (direction-1).
class LatticeGeometry {
 public:
  LatticeGeometry(int lx, int ly);

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  int numSites() const { return lx_ * ly_; }
  int numLinks() const { return 2 * numSites(); }
  int numPlaquettes() const { return numSites(); }

  Site wrap(Site s) const;
  int siteIndex(Site s) const;
  Site site(int index) const;
  Site neighbor(Site s, int direction, int steps = 1) const;

  int linkIndex(Link l) const;
  Link link(int index) const;
  Site linkHead(Link l) const { return neighbor(l.origin, l.direction); }

  Parity siteParity(Site s) const;
  Parity plaquetteParity(Plaquette p) const { return siteParity(p.corner); }
  LinkClass linkClass(Link l) const;

  // Links 1..4 of a plaquette, counter-clockwise:
  // (x,1), (x+1^,2), (x+2^,1), (x,2).
  std::array<Link, 4> plaquetteLinks(Plaquette p) const;

  std::vector<Link> links() const;
  std::vector<Plaquette> plaquettes() const;
  std::vector<Plaquette> plaquettesByParity(Parity parity) const;
  std::vector<Link> linksByClass(LinkClass cls) const;

 private:
  int lx_;
  int ly_;
};

LatticeGeometry build_geometry(int lx, int ly);

}  // namespace znsim
