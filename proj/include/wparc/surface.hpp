#pragma once

#include <array>
#include <string>
#include <vector>

// Combinatorial model of a compact oriented surface with boundary, decomposed
// by a maximal arc system into hexagons.  Each hexagon records the cyclically
// ordered triple of oriented arcs bounding it (in the order induced by the
// surface orientation); every arc appears exactly twice over all hexagons,
// once per direction.

namespace wparc {

struct OrientedArc {
  int arc = 0;            // 0-based arc id
  bool forward = true;    // direction flag

  OrientedArc() = default;
  OrientedArc(int a, bool f) : arc(a), forward(f) {}

  OrientedArc reversed() const { return OrientedArc(arc, !forward); }

  friend bool operator==(const OrientedArc& x, const OrientedArc& y) {
    return x.arc == y.arc && x.forward == y.forward;
  }
  friend bool operator!=(const OrientedArc& x, const OrientedArc& y) { return !(x == y); }
  friend bool operator<(const OrientedArc& x, const OrientedArc& y) {
    if (x.arc != y.arc) return x.arc < y.arc;
    return x.forward && !y.forward;
  }
};

// Compact printable form, e.g. "3+" / "3-".
std::string to_string(const OrientedArc& a);

struct Hexagon {
  std::array<OrientedArc, 3> sides;

  const OrientedArc& side(int m) const { return sides[((m % 3) + 3) % 3]; }
};

// Position of one oriented arc among all hexagon sides.
struct SideRef {
  int hexagon = -1;
  int slot = -1;  // 0..2
  bool valid() const { return hexagon >= 0; }
};

struct BoundaryCycle {
  // Feet in walk order; the segment leaving feet[k] lies in hexagon
  // segment_hex[k] between side slot segment_slot[k] and the next side.
  std::vector<OrientedArc> feet;
  std::vector<int> segment_hex;
  std::vector<int> segment_slot;
};

struct TopologyReport {
  bool valid = false;
  int genus = 0;
  int boundary_count = 0;
  int euler = 0;
  int arc_count = 0;
  std::vector<std::string> errors;
};

class TriangulatedSurface {
 public:
  TriangulatedSurface(std::string name, std::vector<Hexagon> hexagons, int arc_count);

  const std::string& name() const { return name_; }
  const std::vector<Hexagon>& hexagons() const { return hexagons_; }
  int arc_count() const { return arc_count_; }
  int hexagon_count() const { return static_cast<int>(hexagons_.size()); }

  // Where an oriented arc occurs as a hexagon side ({-1,-1} when absent).
  SideRef find_side(const OrientedArc& a) const;

  // Successor of a foot along its boundary component: the segment leaving
  // foot(x) ends at foot(reverse(next side in the hexagon of x)).
  OrientedArc walk_successor(const OrientedArc& a) const;

  TopologyReport validate() const;
  // Boundary components as orbits of the walk; requires a valid surface.
  std::vector<BoundaryCycle> boundary_cycles() const;

  // Index of the cycle containing the foot of each oriented arc.
  // cycle_of[2*arc + (forward ? 0 : 1)].
  std::vector<int> cycle_of_feet(const std::vector<BoundaryCycle>& cycles) const;

  // Lexicographically minimal relabelling, for isomorphism checks.
  std::vector<int> canonical_encoding() const;

 private:
  std::string name_;
  std::vector<Hexagon> hexagons_;
  int arc_count_;
};

bool isomorphic(const TriangulatedSurface& a, const TriangulatedSurface& b);

// Replaces an arc by the opposite diagonal of the union of its two hexagons.
// Rejects arcs whose two occurrences lie in one hexagon.
TriangulatedSurface flip_combinatorial(const TriangulatedSurface& s, int arc);

// On-disk format: JSON with fields `name` and `hexagons` only (see README).
TriangulatedSurface read_surface(const std::string& path);
void write_surface(const TriangulatedSurface& s, const std::string& path);
TriangulatedSurface parse_surface(const std::string& json_text);
std::string serialize_surface(const TriangulatedSurface& s);

// Bundled small examples used throughout the tests.
TriangulatedSurface make_one_holed_torus();
TriangulatedSurface make_pair_of_pants();

}  // namespace wparc
