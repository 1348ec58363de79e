#include "sammy/canon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "sammy/construct.hpp"

namespace sammy {

namespace {

std::vector<std::vector<int>> hom_counts(const FinCat& c) {
  std::vector<std::vector<int>> h(c.n_objects, std::vector<int>(c.n_objects, 0));
  for (MorId m = 0; m < c.n_morphisms(); ++m) h[c.src[m]][c.tgt[m]]++;
  return h;
}

// Iterated refinement of objects into classes by hom-set size profiles.
// Class ids are assigned in sorted signature order, so they are invariant
// under relabeling.
std::vector<int> object_classes(const FinCat& c) {
  const int n = c.n_objects;
  auto h = hom_counts(c);
  std::vector<int> cls(n, 0);
  int n_cls = n > 0 ? 1 : 0;
  for (int round = 0; round < n + 1; ++round) {
    std::vector<std::vector<int>> sig(n);
    for (ObjId x = 0; x < n; ++x) {
      sig[x].push_back(cls[x]);
      std::vector<std::vector<int>> rows;
      for (ObjId y = 0; y < n; ++y) rows.push_back({cls[y], h[x][y], h[y][x]});
      std::sort(rows.begin(), rows.end());
      for (auto& r : rows) sig[x].insert(sig[x].end(), r.begin(), r.end());
    }
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> next(n);
    for (ObjId x = 0; x < n; ++x)
      next[x] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[x]) - uniq.begin());
    if (static_cast<int>(uniq.size()) == n_cls && next == cls) break;
    n_cls = static_cast<int>(uniq.size());
    cls = next;
  }
  return cls;
}

// Relabeling-invariant refinement of the morphisms, seeded by the object
// classes. It splits parallel-morphism blocks so the within-block permutation
// search stays tiny; any iso-invariant subdivision is sound here since the
// search below is exhaustive within blocks.
std::vector<int> morphism_classes(const FinCat& c, const std::vector<int>& ocls) {
  const int m = c.n_morphisms();
  std::vector<int> cls(m);
  {
    std::vector<std::array<int, 3>> sig(m);
    for (MorId i = 0; i < m; ++i)
      sig[i] = {ocls[c.src[i]], ocls[c.tgt[i]], c.is_identity(i) ? 0 : 1};
    std::vector<std::array<int, 3>> uniq(sig.begin(), sig.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (MorId i = 0; i < m; ++i)
      cls[i] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[i]) - uniq.begin());
  }
  for (int round = 0; round < 3; ++round) {
    std::vector<std::vector<int>> sig(m);
    for (MorId i = 0; i < m; ++i) {
      sig[i].push_back(cls[i]);
      std::vector<std::array<int, 3>> rows;
      for (MorId j = 0; j < m; ++j) {
        MorId ij = c.src[i] == c.tgt[j] ? c.compose(i, j) : kNoMor;
        MorId ji = c.src[j] == c.tgt[i] ? c.compose(j, i) : kNoMor;
        if (ij == kNoMor && ji == kNoMor) continue;
        rows.push_back({cls[j], ij == kNoMor ? -1 : cls[ij], ji == kNoMor ? -1 : cls[ji]});
      }
      std::sort(rows.begin(), rows.end());
      for (auto& r : rows) sig[i].insert(sig[i].end(), r.begin(), r.end());
    }
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> next(m);
    for (MorId i = 0; i < m; ++i)
      next[i] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[i]) - uniq.begin());
    if (next == cls) break;
    cls = next;
  }
  return cls;
}

struct ComponentCanon {
  FinCat table;
  std::vector<ObjId> obj_perm;  // local old -> canonical
  std::vector<MorId> mor_perm;
  std::string key;
};

// Exhaustive lex-min search over the relabelings compatible with the
// refinement classes. Components reaching this point are connected, so the
// class structure keeps the candidate count small.
ComponentCanon canonical_component(const FinCat& c) {
  const int n = c.n_objects, m = c.n_morphisms();
  auto ocls = object_classes(c);
  auto mcls = morphism_classes(c, ocls);

  // object groups ordered by class id
  std::map<int, std::vector<ObjId>> by_cls;
  for (ObjId x = 0; x < n; ++x) by_cls[ocls[x]].push_back(x);
  std::vector<std::vector<ObjId>> groups;
  for (auto& [k, v] : by_cls) groups.push_back(v);

  ComponentCanon best;
  bool have_best = false;

  std::vector<ObjId> order;  // new position -> old object
  order.reserve(n);

  auto eval_object_order = [&]() {
    std::vector<int> obj_new(n);
    for (int p = 0; p < n; ++p) obj_new[order[p]] = p;

    // morphism blocks ordered by (new src, new tgt, non-identity flag, class)
    std::map<std::array<int, 4>, std::vector<MorId>> blocks;
    for (MorId i = 0; i < m; ++i)
      blocks[{obj_new[c.src[i]], obj_new[c.tgt[i]], c.is_identity(i) ? 0 : 1, mcls[i]}].push_back(i);

    std::vector<std::vector<MorId>> blk;
    for (auto& [k, v] : blocks) blk.push_back(v);

    // enumerate within-block permutations
    std::vector<MorId> mor_order;  // new position -> old morphism
    mor_order.reserve(m);
    auto rec = [&](auto&& self, size_t bi) -> void {
      if (bi == blk.size()) {
        std::vector<int> mor_new(m);
        for (int p = 0; p < m; ++p) mor_new[mor_order[p]] = p;
        auto [table, wit] = relabel(c, obj_new, mor_new);
        std::string key = exact_key(table);
        if (!have_best || key < best.key) {
          best = {std::move(table), obj_new, mor_new, std::move(key)};
          have_best = true;
        }
        return;
      }
      std::vector<MorId> v = blk[bi];
      std::sort(v.begin(), v.end());
      do {
        mor_order.insert(mor_order.end(), v.begin(), v.end());
        self(self, bi + 1);
        mor_order.resize(mor_order.size() - v.size());
      } while (std::next_permutation(v.begin(), v.end()));
    };
    rec(rec, 0);
  };

  auto rec_obj = [&](auto&& self, size_t gi) -> void {
    if (gi == groups.size()) {
      eval_object_order();
      return;
    }
    std::vector<ObjId> g = groups[gi];
    std::sort(g.begin(), g.end());
    do {
      order.insert(order.end(), g.begin(), g.end());
      self(self, gi + 1);
      order.resize(order.size() - g.size());
    } while (std::next_permutation(g.begin(), g.end()));
  };
  rec_obj(rec_obj, 0);

  if (!have_best) {  // empty component set (n == 0)
    best.table = c;
    best.key = exact_key(c);
  }
  return best;
}

}  // namespace

namespace {

std::mutex canon_cache_mutex;
std::unordered_map<std::string, CanonicalForm>& canon_cache() {
  static std::unordered_map<std::string, CanonicalForm> cache;
  return cache;
}

CanonicalForm canonical_uncached(const FinCat& c);

}  // namespace

CanonicalForm canonical(const FinCat& c) {
  std::string key = exact_key(c);
  {
    std::lock_guard<std::mutex> lock(canon_cache_mutex);
    auto it = canon_cache().find(key);
    if (it != canon_cache().end()) return it->second;
  }
  CanonicalForm form = canonical_uncached(c);
  std::lock_guard<std::mutex> lock(canon_cache_mutex);
  if (canon_cache().size() > 200000) canon_cache().clear();
  return canon_cache().emplace(std::move(key), std::move(form)).first->second;
}

namespace {

CanonicalForm canonical_uncached(const FinCat& c) {
  const int n = c.n_objects, m = c.n_morphisms();

  // split into connected components; coproducts canonicalize componentwise
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorId i = 0; i < m; ++i) parent[find(c.src[i])] = find(c.tgt[i]);

  std::map<int, int> root_to_comp;
  std::vector<std::vector<ObjId>> comp_objs;
  for (ObjId x = 0; x < n; ++x) {
    int r = find(x);
    auto [it, fresh] = root_to_comp.try_emplace(r, static_cast<int>(comp_objs.size()));
    if (fresh) comp_objs.emplace_back();
    comp_objs[it->second].push_back(x);
  }

  struct Sub {
    ComponentCanon canon;
    std::vector<ObjId> objs;   // global ids, local order
    std::vector<MorId> mors;   // global ids, local order
  };
  std::vector<Sub> subs;
  for (auto& objs : comp_objs) {
    std::vector<int> obj_local(n, -1);
    for (size_t i = 0; i < objs.size(); ++i) obj_local[objs[i]] = static_cast<int>(i);
    Sub s;
    s.objs = objs;
    FinCat sc;
    sc.n_objects = static_cast<int>(objs.size());
    for (MorId i = 0; i < m; ++i)
      if (obj_local[c.src[i]] >= 0) {
        s.mors.push_back(i);
        sc.src.push_back(obj_local[c.src[i]]);
        sc.tgt.push_back(obj_local[c.tgt[i]]);
      }
    sc.identity.resize(sc.n_objects);
    std::vector<int> mor_local(m, -1);
    for (size_t i = 0; i < s.mors.size(); ++i) mor_local[s.mors[i]] = static_cast<int>(i);
    for (ObjId x = 0; x < sc.n_objects; ++x) sc.identity[x] = mor_local[c.identity[objs[x]]];
    int sm = sc.n_morphisms();
    sc.comp.assign(static_cast<size_t>(sm) * sm, kNoMor);
    for (int g = 0; g < sm; ++g)
      for (int f = 0; f < sm; ++f) {
        MorId gf = c.compose(s.mors[g], s.mors[f]);
        if (gf != kNoMor) sc.comp[static_cast<size_t>(g) * sm + f] = mor_local[gf];
      }
    s.canon = canonical_component(sc);
    subs.push_back(std::move(s));
  }

  std::vector<int> idx(subs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return subs[a].canon.key < subs[b].canon.key; });

  CanonicalForm out;
  out.obj_perm.assign(n, -1);
  out.mor_perm.assign(m, -1);
  FinCat& t = out.table;
  t.n_objects = n;
  t.src.resize(m);
  t.tgt.resize(m);
  t.identity.resize(n);
  t.comp.assign(static_cast<size_t>(m) * m, kNoMor);
  int obj_off = 0, mor_off = 0;
  for (int k : idx) {
    Sub& s = subs[k];
    const FinCat& ct = s.canon.table;
    for (size_t i = 0; i < s.objs.size(); ++i)
      out.obj_perm[s.objs[i]] = obj_off + s.canon.obj_perm[i];
    for (size_t i = 0; i < s.mors.size(); ++i)
      out.mor_perm[s.mors[i]] = mor_off + s.canon.mor_perm[i];
    for (MorId i = 0; i < ct.n_morphisms(); ++i) {
      t.src[mor_off + i] = obj_off + ct.src[i];
      t.tgt[mor_off + i] = obj_off + ct.tgt[i];
    }
    for (ObjId x = 0; x < ct.n_objects; ++x) t.identity[obj_off + x] = mor_off + ct.identity[x];
    for (MorId g = 0; g < ct.n_morphisms(); ++g)
      for (MorId f = 0; f < ct.n_morphisms(); ++f) {
        MorId gf = ct.compose(g, f);
        if (gf != kNoMor)
          t.comp[static_cast<size_t>(mor_off + g) * m + (mor_off + f)] = mor_off + gf;
      }
    obj_off += ct.n_objects;
    mor_off += ct.n_morphisms();
  }
  out.key = exact_key(out.table);
  return out;
}

}  // namespace

std::string canonical_key(const Value& v) {
  switch (kind_of(v)) {
    case ValueKind::Cat:
      return canonical(std::get<FinCat>(v)).key;
    case ValueKind::Functor: {
      const auto& f = std::get<FunctorData>(v);
      auto cd = canonical(f.dom);
      auto cc = canonical(f.cod);
      std::string s = "F" + cd.key + "|" + cc.key + "|";
      std::vector<ObjId> om(f.obj_map.size());
      for (ObjId x = 0; x < f.dom.n_objects; ++x) om[cd.obj_perm[x]] = cc.obj_perm[f.obj_map[x]];
      std::vector<MorId> mm(f.mor_map.size());
      for (MorId i = 0; i < f.dom.n_morphisms(); ++i)
        mm[cd.mor_perm[i]] = cc.mor_perm[f.mor_map[i]];
      for (ObjId o : om) s += std::to_string(o) + ",";
      s += ";";
      for (MorId i : mm) s += std::to_string(i) + ",";
      return s;
    }
    case ValueKind::NatTrans: {
      const auto& t = std::get<NatTransData>(v);
      auto cd = canonical(t.src_fun.dom);
      auto cc = canonical(t.src_fun.cod);
      auto fun_part = [&](const FunctorData& f) {
        std::string s;
        std::vector<ObjId> om(f.obj_map.size());
        for (ObjId x = 0; x < f.dom.n_objects; ++x) om[cd.obj_perm[x]] = cc.obj_perm[f.obj_map[x]];
        std::vector<MorId> mm(f.mor_map.size());
        for (MorId i = 0; i < f.dom.n_morphisms(); ++i)
          mm[cd.mor_perm[i]] = cc.mor_perm[f.mor_map[i]];
        for (ObjId o : om) s += std::to_string(o) + ",";
        s += ";";
        for (MorId i : mm) s += std::to_string(i) + ",";
        return s;
      };
      std::string s = "N" + cd.key + "|" + cc.key + "|" + fun_part(t.src_fun) + "|" +
                      fun_part(t.tgt_fun) + "|";
      std::vector<MorId> comp(t.components.size());
      for (ObjId x = 0; x < t.src_fun.dom.n_objects; ++x)
        comp[cd.obj_perm[x]] = cc.mor_perm[t.components[x]];
      for (MorId i : comp) s += std::to_string(i) + ",";
      return s;
    }
    case ValueKind::Obj: {
      const auto& o = std::get<ObjRef>(v);
      auto ch = canonical(o.home);
      return "O" + std::to_string(ch.obj_perm[o.id]) + "@" + ch.key;
    }
    case ValueKind::Mor: {
      const auto& mref = std::get<MorRef>(v);
      auto ch = canonical(mref.home);
      return "M" + std::to_string(ch.mor_perm[mref.id]) + "@" + ch.key;
    }
  }
  fail(ErrKind::Internal, "unreachable");
}

// ---------------------------------------------------------------------------
// Direct isomorphism search

namespace {

// one-round degree profile used only for pruning here
std::vector<std::vector<int>> degree_profiles(const FinCat& c) {
  auto h = hom_counts(c);
  std::vector<std::vector<int>> p(c.n_objects);
  for (ObjId x = 0; x < c.n_objects; ++x) {
    std::vector<std::pair<int, int>> row;
    for (ObjId y = 0; y < c.n_objects; ++y)
      if (y != x) row.push_back({h[x][y], h[y][x]});
    std::sort(row.begin(), row.end());
    p[x] = {h[x][x]};
    for (auto& [a, b] : row) {
      p[x].push_back(a);
      p[x].push_back(b);
    }
  }
  return p;
}

struct IsoSearch {
  const FinCat& a;
  const FinCat& b;
  std::vector<std::vector<int>> pa, pb;
  std::vector<ObjId> obj_map;
  std::vector<bool> obj_used;
  std::vector<MorId> mor_map;
  std::vector<bool> mor_used;
  long count = 0;
  bool count_all = false;
  std::optional<FunctorData> witness;

  IsoSearch(const FinCat& a_, const FinCat& b_) : a(a_), b(b_) {
    pa = degree_profiles(a);
    pb = degree_profiles(b);
    obj_map.assign(a.n_objects, -1);
    obj_used.assign(b.n_objects, false);
    mor_map.assign(a.n_morphisms(), -1);
    mor_used.assign(b.n_morphisms(), false);
  }

  bool mor_compatible(MorId i, MorId j) {
    if (b.src[j] != obj_map[a.src[i]] || b.tgt[j] != obj_map[a.tgt[i]]) return false;
    if (a.is_identity(i) != b.is_identity(j)) return false;
    // composition with everything already mapped must commute
    for (MorId k = 0; k < a.n_morphisms(); ++k) {
      if (mor_map[k] == -1 && k != i) continue;
      MorId km = (k == i) ? j : mor_map[k];
      if (a.src[i] == a.tgt[k]) {
        MorId ik = a.compose(i, k);
        if (mor_map[ik] != -1 || ik == i) {
          MorId want = (ik == i) ? j : mor_map[ik];
          if (b.compose(j, km) != want) return false;
        }
      }
      if (a.src[k] == a.tgt[i]) {
        MorId ki = a.compose(k, i);
        if (mor_map[ki] != -1 || ki == i) {
          MorId want = (ki == i) ? j : mor_map[ki];
          if (b.compose(km, j) != want) return false;
        }
      }
    }
    return true;
  }

  bool extend_mor(MorId i) {
    if (i == a.n_morphisms()) {
      count++;
      if (!witness) {
        FunctorData f;
        f.dom = a;
        f.cod = b;
        f.obj_map = obj_map;
        f.mor_map = mor_map;
        witness = f;
      }
      return !count_all;  // stop at first unless counting
    }
    for (MorId j = 0; j < b.n_morphisms(); ++j) {
      if (mor_used[j] || !mor_compatible(i, j)) continue;
      mor_map[i] = j;
      mor_used[j] = true;
      if (extend_mor(i + 1)) return true;
      mor_map[i] = -1;
      mor_used[j] = false;
    }
    return false;
  }

  bool extend_obj(ObjId x) {
    if (x == a.n_objects) return extend_mor(0);
    for (ObjId y = 0; y < b.n_objects; ++y) {
      if (obj_used[y] || pa[x] != pb[y]) continue;
      obj_map[x] = y;
      obj_used[y] = true;
      if (extend_obj(x + 1)) return true;
      obj_map[x] = -1;
      obj_used[y] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<FunctorData> isomorphic(const FinCat& a, const FinCat& b) {
  if (a.n_objects != b.n_objects || a.n_morphisms() != b.n_morphisms()) return std::nullopt;
  {
    auto ha = degree_profiles(a), hb = degree_profiles(b);
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
  }
  IsoSearch s(a, b);
  s.extend_obj(0);
  return s.witness;
}

long automorphisms(const FinCat& c) {
  IsoSearch s(c, c);
  s.count_all = true;
  s.extend_obj(0);
  return s.count;
}

double entropy(const FinCat& c) { return std::log2(static_cast<double>(automorphisms(c))); }

bool equivalent(const FinCat& a, const FinCat& b) {
  return canonical(skeleton(a).first).key == canonical(skeleton(b).first).key;
}

}  // namespace sammy
