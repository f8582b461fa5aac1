#pragma once

#include <numeric>
#include <set>
#include <vector>

#include "maxarity/arity.hpp"
#include "maxarity/arrangement.hpp"
#include "maxarity/expr.hpp"

namespace maxarity {

struct PieceStats {
  std::size_t pieces = 0;   // p: distinct affine functions F agrees with somewhere
  std::size_t regions = 0;  // q: maximal connected open sets where F is affine
  std::size_t cells = 0;    // full-dimensional cells of the arrangement
};

/// Regions are unions of full-dimensional cells glued across shared facets
/// (sign vectors differing in one hyperplane) when the pieces agree.
inline PieceStats piece_stats(const CpwlExpr& f) {
  auto hs = arrangement_of(f);
  auto fam = enumerate_cells(hs, AffineSubspace::whole(f.dimension()), CellScope::full_dimensional);
  const auto& cells = fam.cells();
  std::vector<AffineFunc> piece;
  piece.reserve(cells.size());
  for (const auto& c : cells) piece.push_back(f.affine_piece_at(c.sample));

  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (piece[i] != piece[j]) continue;
      std::size_t diff = 0;
      for (std::size_t h = 0; h < hs.size() && diff < 2; ++h) {
        if (cells[i].signs[h] != cells[j].signs[h]) ++diff;
      }
      if (diff == 1) parent[find(i)] = find(j);
    }
  }
  PieceStats s;
  s.cells = cells.size();
  s.pieces = std::set<AffineFunc>(piece.begin(), piece.end()).size();
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < cells.size(); ++i) roots.insert(find(i));
  s.regions = roots.size();
  return s;
}

struct Report {
  std::size_t dimension = 0;
  std::size_t terms = 0;
  std::size_t arity = 1;
  PieceStats stats;
  ArityCertificate certificate;
};

inline Report make_report(const CpwlExpr& f) {
  Report r;
  r.dimension = f.dimension();
  r.terms = f.terms().size();
  r.arity = f.arity();
  r.stats = piece_stats(f);
  r.certificate = minimal_arity(f);
  return r;
}

}  // namespace maxarity
