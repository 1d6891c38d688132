// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/pauli.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "prqc/errors.hpp"

namespace prqc {

namespace {

bool is_xy(PauliLabel l) { return l == PauliLabel::x || l == PauliLabel::y; }

void check_site_count(int n) {
  if (n < 1) throw std::invalid_argument("site count must be at least 1");
}

}  // namespace

char to_char(PauliLabel l) {
  switch (l) {
    case PauliLabel::identity: return '0';
    case PauliLabel::x: return 'x';
    case PauliLabel::y: return 'y';
    case PauliLabel::z: return 'z';
  }
  throw std::invalid_argument("invalid PauliLabel");
}

char to_char(ReducedLabel l) {
  switch (l) {
    case ReducedLabel::identity: return '0';
    case ReducedLabel::z: return 'z';
    case ReducedLabel::xy: return 'w';
  }
  throw std::invalid_argument("invalid ReducedLabel");
}

PauliLabel pauli_label_from_char(char ch) {
  switch (ch) {
    case '0': case 'i': case 'I': return PauliLabel::identity;
    case 'x': case 'X': return PauliLabel::x;
    case 'y': case 'Y': return PauliLabel::y;
    case 'z': case 'Z': return PauliLabel::z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") + ch +
                                  "'");
  }
}

ReducedLabel reduced_label_from_char(char ch) {
  switch (ch) {
    case '0': case 'i': case 'I': return ReducedLabel::identity;
    case 'z': case 'Z': return ReducedLabel::z;
    case 'w': case 'W': return ReducedLabel::xy;
    default:
      throw std::invalid_argument(std::string("invalid reduced letter '") +
                                  ch + "'");
  }
}

std::uint64_t pauli_index(const PauliString& s) {
  check_site_count(s.n());
  if (s.n() > 32) throw CapacityError("pauli_index: more than 32 sites");
  std::uint64_t idx = 0;
  for (int i = s.n() - 1; i >= 0; --i) {
    idx = idx * 4 + static_cast<std::uint64_t>(s.labels[i]);
  }
  return idx;
}

PauliString pauli_from_index(int n, std::uint64_t index) {
  check_site_count(n);
  if (n > 32) throw CapacityError("pauli_from_index: more than 32 sites");
  PauliString s;
  s.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    s.labels[i] = static_cast<PauliLabel>(index % 4);
    index /= 4;
  }
  if (index != 0) {
    throw std::out_of_range("pauli_from_index: index exceeds 4^n - 1");
  }
  return s;
}

std::uint64_t reduced_index(const ReducedString& s) {
  check_site_count(s.n());
  if (s.n() > 40) throw CapacityError("reduced_index: more than 40 sites");
  std::uint64_t idx = 0;
  for (int i = s.n() - 1; i >= 0; --i) {
    idx = idx * 3 + static_cast<std::uint64_t>(s.labels[i]);
  }
  return idx;
}

ReducedString reduced_from_index(int n, std::uint64_t index) {
  check_site_count(n);
  if (n > 40) throw CapacityError("reduced_from_index: more than 40 sites");
  ReducedString s;
  s.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    s.labels[i] = static_cast<ReducedLabel>(index % 3);
    index /= 3;
  }
  if (index != 0) {
    throw std::out_of_range("reduced_from_index: index exceeds 3^n - 1");
  }
  return s;
}

std::string to_string(const PauliString& s) {
  std::string out;
  out.reserve(s.labels.size());
  for (PauliLabel l : s.labels) out.push_back(to_char(l));
  return out;
}

std::string to_string(const ReducedString& s) {
  std::string out;
  out.reserve(s.labels.size());
  for (ReducedLabel l : s.labels) out.push_back(to_char(l));
  return out;
}

Topology open_chain(int n) {
  check_site_count(n);
  Topology t;
  t.kind = Topology::Kind::open_chain;
  t.n = n;
  for (int i = 0; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
  return t;
}

Topology closed_chain(int n) {
  if (n < 3) {
    throw std::invalid_argument("closed_chain: ring needs at least 3 sites");
  }
  Topology t = open_chain(n);
  t.kind = Topology::Kind::closed_chain;
  t.edges.emplace_back(0, n - 1);
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

Topology explicit_topology(int n, std::vector<std::pair<int, int>> edges) {
  check_site_count(n);
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("explicit_topology: self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw std::invalid_argument("explicit_topology: vertex out of range");
    }
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) {
      throw std::invalid_argument("explicit_topology: duplicate edge");
    }
  }
  std::sort(edges.begin(), edges.end());
  Topology t;
  t.kind = Topology::Kind::explicit_edges;
  t.n = n;
  t.edges = std::move(edges);
  return t;
}

std::string to_string(Topology::Kind kind) {
  switch (kind) {
    case Topology::Kind::open_chain: return "open";
    case Topology::Kind::closed_chain: return "closed";
    case Topology::Kind::explicit_edges: return "explicit";
  }
  throw std::invalid_argument("invalid Topology::Kind");
}

std::pair<PauliLabel, PauliLabel> cz_conjugate_pair(PauliLabel a,
                                                    PauliLabel b) {
  const bool axy = is_xy(a);
  const bool bxy = is_xy(b);
  if (!axy && !bxy) return {a, b};
  if (axy && bxy) {
    auto flip = [](PauliLabel l) {
      return l == PauliLabel::x ? PauliLabel::y : PauliLabel::x;
    };
    return {flip(a), flip(b)};
  }
  auto toggle_0z = [](PauliLabel l) {
    return l == PauliLabel::identity ? PauliLabel::z : PauliLabel::identity;
  };
  if (axy) return {a, toggle_0z(b)};
  return {toggle_0z(a), b};
}

std::pair<ReducedLabel, ReducedLabel> cz_conjugate_pair_reduced(
    ReducedLabel a, ReducedLabel b) {
  const bool axy = a == ReducedLabel::xy;
  const bool bxy = b == ReducedLabel::xy;
  if (axy == bxy) return {a, b};
  auto toggle_0z = [](ReducedLabel l) {
    return l == ReducedLabel::identity ? ReducedLabel::z
                                       : ReducedLabel::identity;
  };
  if (axy) return {a, toggle_0z(b)};
  return {toggle_0z(a), b};
}

namespace {

template <typename StringT, typename PairFn>
StringT apply_layer(const StringT& s, const Topology& topology, PairFn pair) {
  if (s.n() != topology.n) {
    throw std::invalid_argument(
        "apply_cz_layer: word length does not match topology size");
  }
  StringT out = s;
  for (const auto& [a, b] : topology.edges) {
    auto [la, lb] = pair(out.labels[a], out.labels[b]);
    out.labels[a] = la;
    out.labels[b] = lb;
  }
  return out;
}

}  // namespace

PauliString apply_cz_layer(const PauliString& s, const Topology& topology) {
  return apply_layer(s, topology, cz_conjugate_pair);
}

ReducedString apply_cz_layer_reduced(const ReducedString& s,
                                     const Topology& topology) {
  return apply_layer(s, topology, cz_conjugate_pair_reduced);
}

ReducedString reduce(const PauliString& s) {
  ReducedString r;
  r.labels.reserve(s.labels.size());
  for (PauliLabel l : s.labels) {
    switch (l) {
      case PauliLabel::identity: r.labels.push_back(ReducedLabel::identity); break;
      case PauliLabel::z: r.labels.push_back(ReducedLabel::z); break;
      default: r.labels.push_back(ReducedLabel::xy); break;
    }
  }
  return r;
}

std::vector<PauliString> lift_class(const ReducedString& s) {
  std::vector<int> xy_sites;
  for (int i = 0; i < s.n(); ++i) {
    if (s.labels[i] == ReducedLabel::xy) xy_sites.push_back(i);
  }
  if (xy_sites.size() > 20) {
    throw CapacityError("lift_class: class has more than 2^20 members");
  }
  PauliString base;
  base.labels.resize(s.n());
  for (int i = 0; i < s.n(); ++i) {
    base.labels[i] = s.labels[i] == ReducedLabel::z ? PauliLabel::z
                                                    : PauliLabel::identity;
  }
  const std::uint64_t count = std::uint64_t{1} << xy_sites.size();
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    PauliString member = base;
    for (std::size_t k = 0; k < xy_sites.size(); ++k) {
      member.labels[xy_sites[k]] =
          (mask >> k) & 1 ? PauliLabel::y : PauliLabel::x;
    }
    out.push_back(std::move(member));
  }
  std::sort(out.begin(), out.end(),
            [](const PauliString& a, const PauliString& b) {
              return pauli_index(a) < pauli_index(b);
            });
  return out;
}

std::uint64_t multiplicity(const ReducedString& s) {
  int xy = 0;
  for (ReducedLabel l : s.labels) {
    if (l == ReducedLabel::xy) ++xy;
  }
  if (xy > 63) throw CapacityError("multiplicity: exceeds 2^63");
  return std::uint64_t{1} << xy;
}

}  // namespace prqc
