#pragma once

#include <random>
#include <vector>

#include "sammy/canon.hpp"
#include "sammy/construct.hpp"
#include "sammy/core.hpp"

namespace sammy::testing {

// ---------------------------------------------------------------------------
// Independent oracles. These deliberately avoid the library's pruned search
// paths: plain nested loops plus a full validity re-check at the end.

/// Counts functors a -> b by enumerating every object map and every raw
/// morphism assignment, then filtering with the public validator.
inline long count_functors_brute(const FinCat& a, const FinCat& b) {
  long count = 0;
  const int na = a.n_objects, ma = a.n_morphisms();
  std::vector<ObjId> omap(na, 0);
  std::vector<MorId> mmap(ma, 0);
  auto mor_loop = [&](auto&& self, int k) -> void {
    if (k == ma) {
      FunctorData f{a, b, omap, mmap};
      if (check_functor(f)) count++;
      return;
    }
    for (MorId j = 0; j < b.n_morphisms(); ++j) {
      if (b.src[j] != omap[a.src[k]] || b.tgt[j] != omap[a.tgt[k]]) continue;
      mmap[k] = j;
      self(self, k + 1);
    }
  };
  auto obj_loop = [&](auto&& self, int x) -> void {
    if (x == na) {
      mor_loop(mor_loop, 0);
      return;
    }
    for (ObjId o = 0; o < b.n_objects; ++o) {
      omap[x] = o;
      self(self, x + 1);
    }
  };
  if (na == 0) {
    mor_loop(mor_loop, 0);
  } else {
    obj_loop(obj_loop, 0);
  }
  return count;
}

/// Counts natural transformations between every ordered pair of functors
/// a -> b by enumerating every component family and filtering with the
/// validator.
inline long count_nat_trans_brute(const FinCat& a, const FinCat& b) {
  auto funs = enumerate_functors(a, b);
  long count = 0;
  for (const auto& f : funs)
    for (const auto& g : funs) {
      std::vector<MorId> comp(a.n_objects, 0);
      auto rec = [&](auto&& self, int x) -> void {
        if (x == a.n_objects) {
          NatTransData t{f, g, comp};
          if (check_nat_trans(t)) count++;
          return;
        }
        for (MorId m = 0; m < b.n_morphisms(); ++m) {
          comp[x] = m;
          self(self, x + 1);
        }
      };
      if (a.n_objects == 0)
        count++;  // the empty family is the unique transformation
      else
        rec(rec, 0);
    }
  return count;
}

/// Textbook comma category: objects are triples (a, b, h : L a -> R b),
/// morphisms are pairs (p, q) making the square commute.
inline FinCat comma_textbook(const FunctorData& l, const FunctorData& r) {
  const FinCat& a = l.dom;
  const FinCat& b = r.dom;
  const FinCat& c = l.cod;
  struct Obj {
    ObjId a, b;
    MorId h;
  };
  std::vector<Obj> objs;
  for (ObjId x = 0; x < a.n_objects; ++x)
    for (ObjId y = 0; y < b.n_objects; ++y)
      for (MorId h = 0; h < c.n_morphisms(); ++h)
        if (c.src[h] == l.obj_map[x] && c.tgt[h] == r.obj_map[y]) objs.push_back({x, y, h});
  auto obj_index = [&](ObjId x, ObjId y, MorId h) {
    for (size_t i = 0; i < objs.size(); ++i)
      if (objs[i].a == x && objs[i].b == y && objs[i].h == h) return static_cast<int>(i);
    return -1;
  };
  struct Mor {
    int from, to;
    MorId p, q;
  };
  std::vector<Mor> mors;
  for (size_t i = 0; i < objs.size(); ++i)
    for (size_t j = 0; j < objs.size(); ++j)
      for (MorId p = 0; p < a.n_morphisms(); ++p) {
        if (a.src[p] != objs[i].a || a.tgt[p] != objs[j].a) continue;
        for (MorId q = 0; q < b.n_morphisms(); ++q) {
          if (b.src[q] != objs[i].b || b.tgt[q] != objs[j].b) continue;
          if (c.compose(r.mor_map[q], objs[i].h) != c.compose(objs[j].h, l.mor_map[p])) continue;
          mors.push_back({static_cast<int>(i), static_cast<int>(j), p, q});
        }
      }
  auto mor_index = [&](int from, int to, MorId p, MorId q) {
    for (size_t i = 0; i < mors.size(); ++i)
      if (mors[i].from == from && mors[i].to == to && mors[i].p == p && mors[i].q == q)
        return static_cast<int>(i);
    return -1;
  };
  FinCat out;
  out.n_objects = static_cast<int>(objs.size());
  const int mc = static_cast<int>(mors.size());
  out.src.resize(mc);
  out.tgt.resize(mc);
  out.identity.resize(out.n_objects);
  out.comp.assign(static_cast<size_t>(mc) * mc, kNoMor);
  for (int i = 0; i < mc; ++i) {
    out.src[i] = mors[i].from;
    out.tgt[i] = mors[i].to;
  }
  for (int i = 0; i < out.n_objects; ++i)
    out.identity[i] = mor_index(i, i, a.identity[objs[i].a], b.identity[objs[i].b]);
  for (int i = 0; i < mc; ++i)
    for (int j = 0; j < mc; ++j) {
      if (mors[i].from != mors[j].to) continue;
      out.comp[static_cast<size_t>(i) * mc + j] =
          mor_index(mors[j].from, mors[i].to, a.compose(mors[i].p, mors[j].p),
                    b.compose(mors[i].q, mors[j].q));
    }
  return out;
}

/// Pool of small valid categories assembled from constants; shuffled variants
/// keep the pool representative without hand-written tables.
inline std::vector<FinCat> small_pool(unsigned seed = 20240801, bool include_shuffles = true) {
  std::vector<FinCat> pool = {make_zero(),    make_one(),      make_two(),     make_iso_two(),
                              make_chain(3),  make_discrete(2), make_discrete(3)};
  pool.push_back(coproduct(make_one(), make_two()).cat);
  pool.push_back(product(make_two(), make_two()).cat);
  pool.push_back(opposite(make_chain(3)));
  if (include_shuffles) {
    std::mt19937 rng(seed);
    size_t base = pool.size();
    for (size_t i = 0; i < base; ++i) pool.push_back(shuffle(pool[i], rng).first);
  }
  return pool;
}

inline bool is_invertible(const FinCat& c, MorId m) {
  for (MorId j = 0; j < c.n_morphisms(); ++j)
    if (c.src[j] == c.tgt[m] && c.tgt[j] == c.src[m] &&
        c.compose(j, m) == c.identity[c.src[m]] && c.compose(m, j) == c.identity[c.tgt[m]])
      return true;
  return false;
}

inline bool naturally_isomorphic(const FunctorData& f, const FunctorData& g) {
  if (f.dom != g.dom || f.cod != g.cod) return false;
  for (const NatTransData& t : enumerate_nat_trans(f, g)) {
    bool invertible = true;
    for (MorId m : t.components)
      if (!is_invertible(f.cod, m)) {
        invertible = false;
        break;
      }
    if (invertible) return true;
  }
  return false;
}

inline FinCat span_category() {
  // x <- y -> z as explicit tables: identities 0,1,2 then y->x, y->z
  FinCat c;
  c.n_objects = 3;
  c.src = {0, 1, 2, 1, 1};
  c.tgt = {0, 1, 2, 0, 2};
  c.identity = {0, 1, 2};
  c.comp.assign(25, kNoMor);
  auto at = [&](MorId g, MorId f) -> MorId& { return c.comp[g * 5 + f]; };
  at(0, 0) = 0;
  at(1, 1) = 1;
  at(2, 2) = 2;
  at(3, 1) = 3;
  at(0, 3) = 3;
  at(4, 1) = 4;
  at(2, 4) = 4;
  return c;
}

}  // namespace sammy::testing
