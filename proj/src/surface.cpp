#include "wparc/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wparc {

using nlohmann::json;

std::string to_string(const OrientedArc& a) {
  return std::to_string(a.arc) + (a.forward ? "+" : "-");
}

TriangulatedSurface::TriangulatedSurface(std::string name, std::vector<Hexagon> hexagons,
                                         int arc_count)
    : name_(std::move(name)), hexagons_(std::move(hexagons)), arc_count_(arc_count) {
  if (arc_count_ <= 0) throw std::invalid_argument("TriangulatedSurface: arc_count must be > 0");
  for (const Hexagon& h : hexagons_)
    for (const OrientedArc& s : h.sides)
      if (s.arc < 0 || s.arc >= arc_count_)
        throw std::invalid_argument("TriangulatedSurface: arc id out of range: " + to_string(s));
}

SideRef TriangulatedSurface::find_side(const OrientedArc& a) const {
  for (int h = 0; h < hexagon_count(); ++h)
    for (int m = 0; m < 3; ++m)
      if (hexagons_[h].sides[m] == a) return SideRef{h, m};
  return SideRef{};
}

OrientedArc TriangulatedSurface::walk_successor(const OrientedArc& a) const {
  const SideRef ref = find_side(a);
  if (!ref.valid())
    throw std::invalid_argument("walk_successor: oriented arc " + to_string(a) + " not present");
  return hexagons_[ref.hexagon].side(ref.slot + 1).reversed();
}

TopologyReport TriangulatedSurface::validate() const {
  TopologyReport rep;
  rep.arc_count = arc_count_;

  std::vector<int> fwd(arc_count_, 0), bwd(arc_count_, 0);
  for (const Hexagon& h : hexagons_)
    for (const OrientedArc& s : h.sides) (s.forward ? fwd : bwd)[s.arc]++;

  for (int a = 0; a < arc_count_; ++a) {
    if (fwd[a] + bwd[a] == 0) {
      rep.errors.push_back("arc " + std::to_string(a) + " unused");
      continue;
    }
    if (fwd[a] != 1 || bwd[a] != 1)
      rep.errors.push_back("arc " + std::to_string(a) + " used " + std::to_string(fwd[a]) +
                           "x forward and " + std::to_string(bwd[a]) + "x backward");
  }

  const int H = hexagon_count();
  if (3 * H != 2 * arc_count_)
    rep.errors.push_back("side count 3H=" + std::to_string(3 * H) + " differs from 2A=" +
                         std::to_string(2 * arc_count_));
  if (H % 2 != 0) rep.errors.push_back("hexagon count must be even");

  if (!rep.errors.empty()) return rep;

  // Walk orbits; the successor map must be a bijection on the 2A feet.
  std::map<OrientedArc, int> orbit;
  int cycles = 0;
  for (const Hexagon& h : hexagons_)
    for (const OrientedArc& s : h.sides) {
      if (orbit.count(s)) continue;
      OrientedArc cur = s;
      do {
        orbit[cur] = cycles;
        cur = walk_successor(cur);
      } while (!(cur == s));
      ++cycles;
    }

  rep.boundary_count = cycles;
  rep.euler = -H / 2;
  const int two_g = 2 - rep.boundary_count - rep.euler;
  if (two_g < 0 || two_g % 2 != 0) {
    rep.errors.push_back("non-integer or negative genus from chi=" + std::to_string(rep.euler) +
                         ", n=" + std::to_string(rep.boundary_count));
    return rep;
  }
  rep.genus = two_g / 2;
  rep.valid = true;
  return rep;
}

std::vector<BoundaryCycle> TriangulatedSurface::boundary_cycles() const {
  const TopologyReport rep = validate();
  if (!rep.valid) {
    std::string msg = "boundary_cycles: invalid surface";
    for (const auto& e : rep.errors) msg += "; " + e;
    throw std::invalid_argument(msg);
  }
  std::vector<BoundaryCycle> cycles;
  std::set<OrientedArc> seen;
  for (const Hexagon& h : hexagons_)
    for (const OrientedArc& s : h.sides) {
      if (seen.count(s)) continue;
      BoundaryCycle cyc;
      OrientedArc cur = s;
      do {
        seen.insert(cur);
        const SideRef ref = find_side(cur);
        cyc.feet.push_back(cur);
        cyc.segment_hex.push_back(ref.hexagon);
        cyc.segment_slot.push_back(ref.slot);
        cur = walk_successor(cur);
      } while (!(cur == s));
      cycles.push_back(std::move(cyc));
    }
  return cycles;
}

std::vector<int> TriangulatedSurface::cycle_of_feet(const std::vector<BoundaryCycle>& cycles) const {
  std::vector<int> idx(2 * arc_count_, -1);
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c)
    for (const OrientedArc& f : cycles[c].feet) idx[2 * f.arc + (f.forward ? 0 : 1)] = c;
  return idx;
}

std::vector<int> TriangulatedSurface::canonical_encoding() const {
  // Try every (hexagon, rotation) as the seed of a greedy relabelling and keep
  // the lexicographically smallest flat encoding.  Arcs are renamed in order
  // of first encounter, with the first encounter declared "forward".
  std::vector<int> best;
  const int H = hexagon_count();
  for (int h0 = 0; h0 < H; ++h0) {
    for (int rot = 0; rot < 3; ++rot) {
      std::vector<int> newid(arc_count_, -1);
      std::vector<bool> flip(arc_count_, false);
      int next = 0;
      // Visit hexagons in a canonical order: start from h0, then repeatedly
      // pick the unvisited hexagon containing the reverse of the earliest
      // relabelled side not yet matched.
      std::vector<std::array<OrientedArc, 3>> rotated(H);
      for (int h = 0; h < H; ++h)
        for (int m = 0; m < 3; ++m)
          rotated[h][m] = hexagons_[h].side(h == h0 ? m + rot : m);

      std::vector<int> order;
      std::vector<bool> used(H, false);
      order.push_back(h0);
      used[h0] = true;

      std::vector<int> enc;
      auto label = [&](const OrientedArc& s) {
        if (newid[s.arc] < 0) {
          newid[s.arc] = next++;
          flip[s.arc] = !s.forward;
        }
        enc.push_back(2 * newid[s.arc] + ((s.forward != flip[s.arc]) ? 1 : 0));
      };

      for (size_t k = 0; k < order.size(); ++k) {
        const int h = order[k];
        // Rotate so the smallest relabelled side leads (deterministic).
        int base = 0;
        if (h != h0) {
          int best_key = 1 << 30;
          for (int m = 0; m < 3; ++m) {
            const OrientedArc& s = rotated[h][m];
            const int key = newid[s.arc] < 0 ? (1 << 29) + s.arc : newid[s.arc];
            if (key < best_key) {
              best_key = key;
              base = m;
            }
          }
        }
        for (int m = 0; m < 3; ++m) label(rotated[h][(base + m) % 3]);
        // Enqueue neighbours through shared arcs in encounter order.
        for (int m = 0; m < 3; ++m) {
          const SideRef other = find_side(rotated[h][(base + m) % 3].reversed());
          if (other.valid() && !used[other.hexagon]) {
            used[other.hexagon] = true;
            order.push_back(other.hexagon);
          }
        }
      }
      if (best.empty() || enc < best) best = enc;
    }
  }
  return best;
}

bool isomorphic(const TriangulatedSurface& a, const TriangulatedSurface& b) {
  if (a.arc_count() != b.arc_count() || a.hexagon_count() != b.hexagon_count()) return false;
  return a.canonical_encoding() == b.canonical_encoding();
}

TriangulatedSurface flip_combinatorial(const TriangulatedSurface& s, int arc) {
  if (arc < 0 || arc >= s.arc_count())
    throw std::invalid_argument("flip_combinatorial: arc id out of range");
  const SideRef r1 = s.find_side(OrientedArc(arc, true));
  const SideRef r2 = s.find_side(OrientedArc(arc, false));
  if (!r1.valid() || !r2.valid())
    throw std::invalid_argument("flip_combinatorial: arc not present in both directions");
  if (r1.hexagon == r2.hexagon)
    throw std::invalid_argument("flip_combinatorial: arc " + std::to_string(arc) +
                                " is self-glued; the enclosed diagonal cannot flip");

  const Hexagon& t1 = s.hexagons()[r1.hexagon];
  const Hexagon& t2 = s.hexagons()[r2.hexagon];
  // t1 = (e, A, B), t2 = (ebar, C, D) after rotating the flipped arc first;
  // the diagonal move yields (f, B, C) and (fbar, D, A).
  const OrientedArc A = t1.side(r1.slot + 1), B = t1.side(r1.slot + 2);
  const OrientedArc C = t2.side(r2.slot + 1), D = t2.side(r2.slot + 2);

  std::vector<Hexagon> hexes = s.hexagons();
  hexes[r1.hexagon] = Hexagon{{OrientedArc(arc, true), B, C}};
  hexes[r2.hexagon] = Hexagon{{OrientedArc(arc, false), D, A}};
  TriangulatedSurface out(s.name(), std::move(hexes), s.arc_count());

  const TopologyReport rep = out.validate();
  if (!rep.valid) {
    std::string msg = "flip_combinatorial: flip of arc " + std::to_string(arc) +
                      " produced an invalid surface";
    for (const auto& e : rep.errors) msg += "; " + e;
    throw std::runtime_error(msg);
  }
  return out;
}

namespace {

OrientedArc parse_side(const json& j, int index) {
  if (!j.is_object()) throw std::invalid_argument("surface file: hexagon side must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "arc" && it.key() != "dir")
      throw std::invalid_argument("surface file: unknown field '" + it.key() + "' in hexagon " +
                                  std::to_string(index));
  if (!j.contains("arc") || !j.contains("dir"))
    throw std::invalid_argument("surface file: hexagon side needs 'arc' and 'dir'");
  const int arc = j.at("arc").get<int>();
  const std::string dir = j.at("dir").get<std::string>();
  if (dir != "+" && dir != "-")
    throw std::invalid_argument("surface file: dir must be \"+\" or \"-\"");
  return OrientedArc(arc, dir == "+");
}

}  // namespace

TriangulatedSurface parse_surface(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("surface file: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("surface file: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "name" && it.key() != "hexagons")
      throw std::invalid_argument("surface file: unknown field '" + it.key() + "'");
  if (!j.contains("name") || !j.contains("hexagons"))
    throw std::invalid_argument("surface file: required fields are 'name' and 'hexagons'");

  const std::string name = j.at("name").get<std::string>();
  const json& hx = j.at("hexagons");
  if (!hx.is_array()) throw std::invalid_argument("surface file: 'hexagons' must be a list");

  std::vector<Hexagon> hexes;
  std::set<int> ids;
  int max_id = -1;
  int index = 0;
  for (const json& hj : hx) {
    if (!hj.is_array() || hj.size() != 3)
      throw std::invalid_argument("surface file: hexagon " + std::to_string(index) +
                                  " must be a list of 3 sides");
    Hexagon h;
    for (int m = 0; m < 3; ++m) {
      h.sides[m] = parse_side(hj[m], index);
      if (h.sides[m].arc < 0)
        throw std::invalid_argument("surface file: negative arc id in hexagon " +
                                    std::to_string(index));
      ids.insert(h.sides[m].arc);
      max_id = std::max(max_id, h.sides[m].arc);
    }
    hexes.push_back(h);
    ++index;
  }
  if (hexes.empty()) throw std::invalid_argument("surface file: no hexagons");
  for (int a = 0; a <= max_id; ++a)
    if (!ids.count(a))
      throw std::invalid_argument("surface file: arc ids must be 0..A-1; missing id " +
                                  std::to_string(a));
  return TriangulatedSurface(name, std::move(hexes), max_id + 1);
}

std::string serialize_surface(const TriangulatedSurface& s) {
  json hx = json::array();
  for (const Hexagon& h : s.hexagons()) {
    json hj = json::array();
    for (const OrientedArc& side : h.sides)
      hj.push_back({{"arc", side.arc}, {"dir", side.forward ? "+" : "-"}});
    hx.push_back(hj);
  }
  json j;
  j["name"] = s.name();
  j["hexagons"] = hx;
  return j.dump(2) + "\n";
}

TriangulatedSurface read_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_surface: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_surface(ss.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_surface(const TriangulatedSurface& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_surface: cannot open " + path);
  out << serialize_surface(s);
}

TriangulatedSurface make_one_holed_torus() {
  std::vector<Hexagon> h = {
      Hexagon{{OrientedArc(0, true), OrientedArc(1, true), OrientedArc(2, true)}},
      Hexagon{{OrientedArc(0, false), OrientedArc(1, false), OrientedArc(2, false)}}};
  return TriangulatedSurface("one-holed-torus", std::move(h), 3);
}

TriangulatedSurface make_pair_of_pants() {
  std::vector<Hexagon> h = {
      Hexagon{{OrientedArc(0, true), OrientedArc(1, true), OrientedArc(2, true)}},
      Hexagon{{OrientedArc(0, false), OrientedArc(2, false), OrientedArc(1, false)}}};
  return TriangulatedSurface("pair-of-pants", std::move(h), 3);
}

}  // namespace wparc
