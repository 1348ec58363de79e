#include "sammy/construct.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace sammy {

namespace {

void check_size(long n_obj, long n_mor, const SizeLimits& lim, const char* what) {
  if (n_obj > lim.max_objects)
    fail(ErrKind::SizeBound,
         std::string(what) + " exceeds max_objects=" + std::to_string(lim.max_objects));
  if (n_mor > lim.max_morphisms)
    fail(ErrKind::SizeBound,
         std::string(what) + " exceeds max_morphisms=" + std::to_string(lim.max_morphisms));
}

}  // namespace

// ---------------------------------------------------------------------------
// Coproduct / product / pullback

CoproductResult coproduct(const FinCat& a, const FinCat& b) {
  const int na = a.n_objects, nb = b.n_objects;
  const int ma = a.n_morphisms(), mb = b.n_morphisms();
  FinCat c;
  c.n_objects = na + nb;
  c.src.resize(ma + mb);
  c.tgt.resize(ma + mb);
  c.identity.resize(na + nb);
  c.comp.assign(static_cast<size_t>(ma + mb) * (ma + mb), kNoMor);
  for (MorId m = 0; m < ma; ++m) {
    c.src[m] = a.src[m];
    c.tgt[m] = a.tgt[m];
  }
  for (MorId m = 0; m < mb; ++m) {
    c.src[ma + m] = na + b.src[m];
    c.tgt[ma + m] = na + b.tgt[m];
  }
  for (ObjId x = 0; x < na; ++x) c.identity[x] = a.identity[x];
  for (ObjId x = 0; x < nb; ++x) c.identity[na + x] = ma + b.identity[x];
  const int mc = ma + mb;
  for (MorId g = 0; g < ma; ++g)
    for (MorId f = 0; f < ma; ++f) {
      MorId gf = a.compose(g, f);
      if (gf != kNoMor) c.comp[static_cast<size_t>(g) * mc + f] = gf;
    }
  for (MorId g = 0; g < mb; ++g)
    for (MorId f = 0; f < mb; ++f) {
      MorId gf = b.compose(g, f);
      if (gf != kNoMor) c.comp[static_cast<size_t>(ma + g) * mc + (ma + f)] = ma + gf;
    }
  CoproductResult out;
  out.cat = std::move(c);
  out.inl.dom = a;
  out.inl.cod = out.cat;
  out.inl.obj_map.resize(na);
  std::iota(out.inl.obj_map.begin(), out.inl.obj_map.end(), 0);
  out.inl.mor_map.resize(ma);
  std::iota(out.inl.mor_map.begin(), out.inl.mor_map.end(), 0);
  out.inr.dom = b;
  out.inr.cod = out.cat;
  out.inr.obj_map.resize(nb);
  std::iota(out.inr.obj_map.begin(), out.inr.obj_map.end(), na);
  out.inr.mor_map.resize(mb);
  std::iota(out.inr.mor_map.begin(), out.inr.mor_map.end(), ma);
  require_valid(out.cat, "coproduct");
  return out;
}

ProductResult product(const FinCat& a, const FinCat& b, const SizeLimits& lim) {
  const int na = a.n_objects, nb = b.n_objects;
  const int ma = a.n_morphisms(), mb = b.n_morphisms();
  check_size(static_cast<long>(na) * nb, static_cast<long>(ma) * mb, lim, "product");
  FinCat c;
  c.n_objects = na * nb;
  const int mc = ma * mb;
  c.src.resize(mc);
  c.tgt.resize(mc);
  c.identity.resize(c.n_objects);
  c.comp.assign(static_cast<size_t>(mc) * mc, kNoMor);
  for (MorId p = 0; p < ma; ++p)
    for (MorId q = 0; q < mb; ++q) {
      c.src[p * mb + q] = a.src[p] * nb + b.src[q];
      c.tgt[p * mb + q] = a.tgt[p] * nb + b.tgt[q];
    }
  for (ObjId x = 0; x < na; ++x)
    for (ObjId y = 0; y < nb; ++y) c.identity[x * nb + y] = a.identity[x] * mb + b.identity[y];
  for (MorId p = 0; p < ma; ++p)
    for (MorId q = 0; q < mb; ++q)
      for (MorId r = 0; r < ma; ++r)
        for (MorId s = 0; s < mb; ++s) {
          if (a.src[p] != a.tgt[r] || b.src[q] != b.tgt[s]) continue;
          c.comp[static_cast<size_t>(p * mb + q) * mc + (r * mb + s)] =
              a.compose(p, r) * mb + b.compose(q, s);
        }
  ProductResult out;
  out.cat = std::move(c);
  out.proj_l.dom = out.cat;
  out.proj_l.cod = a;
  out.proj_r.dom = out.cat;
  out.proj_r.cod = b;
  for (ObjId x = 0; x < na; ++x)
    for (ObjId y = 0; y < nb; ++y) {
      out.proj_l.obj_map.push_back(x);
      out.proj_r.obj_map.push_back(y);
    }
  for (MorId p = 0; p < ma; ++p)
    for (MorId q = 0; q < mb; ++q) {
      out.proj_l.mor_map.push_back(p);
      out.proj_r.mor_map.push_back(q);
    }
  require_valid(out.cat, "product");
  require_valid(out.proj_l, "product");
  require_valid(out.proj_r, "product");
  return out;
}

PullbackResult pullback(const FunctorData& f, const FunctorData& g) {
  if (f.cod != g.cod) fail(ErrKind::Type, "pullback: functors must share a codomain");
  const FinCat& a = f.dom;
  const FinCat& b = g.dom;
  std::vector<std::pair<ObjId, ObjId>> objs;
  std::map<std::pair<ObjId, ObjId>, ObjId> obj_idx;
  for (ObjId x = 0; x < a.n_objects; ++x)
    for (ObjId y = 0; y < b.n_objects; ++y)
      if (f.obj_map[x] == g.obj_map[y]) {
        obj_idx[{x, y}] = static_cast<ObjId>(objs.size());
        objs.push_back({x, y});
      }
  std::vector<std::pair<MorId, MorId>> mors;
  std::map<std::pair<MorId, MorId>, MorId> mor_idx;
  for (MorId m = 0; m < a.n_morphisms(); ++m)
    for (MorId n = 0; n < b.n_morphisms(); ++n)
      if (f.mor_map[m] == g.mor_map[n]) {
        mor_idx[{m, n}] = static_cast<MorId>(mors.size());
        mors.push_back({m, n});
      }
  FinCat c;
  c.n_objects = static_cast<int>(objs.size());
  const int mc = static_cast<int>(mors.size());
  c.src.resize(mc);
  c.tgt.resize(mc);
  c.identity.resize(c.n_objects);
  c.comp.assign(static_cast<size_t>(mc) * mc, kNoMor);
  for (MorId i = 0; i < mc; ++i) {
    auto [m, n] = mors[i];
    c.src[i] = obj_idx.at({a.src[m], b.src[n]});
    c.tgt[i] = obj_idx.at({a.tgt[m], b.tgt[n]});
  }
  for (ObjId i = 0; i < c.n_objects; ++i) {
    auto [x, y] = objs[i];
    c.identity[i] = mor_idx.at({a.identity[x], b.identity[y]});
  }
  for (MorId i = 0; i < mc; ++i)
    for (MorId j = 0; j < mc; ++j) {
      auto [m, n] = mors[i];
      auto [m2, n2] = mors[j];
      if (a.src[m] != a.tgt[m2] || b.src[n] != b.tgt[n2]) continue;
      c.comp[static_cast<size_t>(i) * mc + j] = mor_idx.at({a.compose(m, m2), b.compose(n, n2)});
    }
  PullbackResult out;
  out.cat = std::move(c);
  out.to_l.dom = out.cat;
  out.to_l.cod = a;
  out.to_r.dom = out.cat;
  out.to_r.cod = b;
  for (auto& [x, y] : objs) {
    out.to_l.obj_map.push_back(x);
    out.to_r.obj_map.push_back(y);
  }
  for (auto& [m, n] : mors) {
    out.to_l.mor_map.push_back(m);
    out.to_r.mor_map.push_back(n);
  }
  require_valid(out.cat, "pullback");
  require_valid(out.to_l, "pullback");
  require_valid(out.to_r, "pullback");
  return out;
}

// ---------------------------------------------------------------------------
// Coequalizer by congruence closure over edge words
//
// A word [e_k,...,e_1] stands for the composite e_k ∘ ... ∘ e_1 of
// non-identity morphisms of B over the quotiented object set; the empty word
// at an object class is its identity, encoded as the one-element word
// {-1-class}. Word length grows until every maximal-length word is congruent
// to a shorter one; class count beyond the bound reports SizeBound since the
// quotient may be infinite.

namespace {

// words pack into strings (two bytes per entry, offset so the negative
// identity encodings stay representable) for cheap hashing
std::string pack_word(const std::vector<int>& w) {
  std::string s;
  s.reserve(w.size() * 2);
  for (int x : w) {
    unsigned v = static_cast<unsigned>(x + 32768);
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  return s;
}

struct WordDict {
  std::unordered_map<std::string, int> ids;
  std::vector<std::vector<int>> words;
  std::vector<int> parent;
  long n_unions = 0;

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    n_unions++;
  }
  int intern(const std::vector<int>& w) {
    auto [it, fresh] = ids.try_emplace(pack_word(w), static_cast<int>(words.size()));
    if (fresh) {
      words.push_back(w);
      parent.push_back(it->second);
    }
    return it->second;
  }
  int lookup(const std::vector<int>& w) const {
    auto it = ids.find(pack_word(w));
    return it == ids.end() ? -1 : it->second;
  }
};

struct Rewrite {
  std::vector<int> lhs;
  std::vector<int> rhs;  // may be an empty-word encoding
};

size_t word_len(const std::vector<int>& w) { return w[0] < 0 ? 0 : w.size(); }

}  // namespace

CoeqResult coequalizer_cat(const FunctorData& f, const FunctorData& g, int max_morphisms) {
  if (f.dom != g.dom || f.cod != g.cod)
    fail(ErrKind::Type, "coequalizer: functors must be parallel");
  const FinCat& a = f.dom;
  const FinCat& b = f.cod;
  // free-ish quotients grow their word population exponentially long before
  // the class bound trips, so the word budget is the practical divergence
  // detector; it scales with the class bound
  const long word_cap = std::max(20000L, 40L * max_morphisms);

  // object classes generated by f(x) ~ g(x)
  std::vector<int> oparent(b.n_objects);
  std::iota(oparent.begin(), oparent.end(), 0);
  std::function<int(int)> ofind = [&](int x) {
    while (oparent[x] != x) x = oparent[x] = oparent[oparent[x]];
    return x;
  };
  for (ObjId x = 0; x < a.n_objects; ++x) {
    int r1 = ofind(f.obj_map[x]), r2 = ofind(g.obj_map[x]);
    if (r1 != r2) oparent[std::max(r1, r2)] = std::min(r1, r2);
  }
  std::vector<int> ocls(b.n_objects, -1);
  int n_cls = 0;
  for (ObjId x = 0; x < b.n_objects; ++x) {
    int r = ofind(x);
    if (ocls[r] == -1) ocls[r] = n_cls++;
    ocls[x] = ocls[r];
  }

  std::vector<MorId> edges;
  std::vector<int> edge_of_mor(b.n_morphisms(), -1);
  for (MorId m = 0; m < b.n_morphisms(); ++m)
    if (!b.is_identity(m)) {
      edge_of_mor[m] = static_cast<int>(edges.size());
      edges.push_back(m);
    }
  const int ne = static_cast<int>(edges.size());
  std::vector<int> esrc(ne), etgt(ne);
  for (int e = 0; e < ne; ++e) {
    esrc[e] = ocls[b.src[edges[e]]];
    etgt[e] = ocls[b.tgt[edges[e]]];
  }

  auto empty_word = [&](int cls) { return std::vector<int>{-1 - cls}; };
  auto word_src = [&](const std::vector<int>& w) {
    return w[0] < 0 ? -1 - w[0] : esrc[w.back()];
  };
  auto word_tgt = [&](const std::vector<int>& w) { return w[0] < 0 ? -1 - w[0] : etgt[w[0]]; };
  auto mor_word = [&](MorId m) {
    return b.is_identity(m) ? empty_word(ocls[b.src[m]]) : std::vector<int>{edge_of_mor[m]};
  };

  // ground rewrites: B-composition collapses adjacent pairs, and the images
  // of each A-morphism under f and g coincide
  std::vector<Rewrite> rules;
  for (MorId g2 = 0; g2 < b.n_morphisms(); ++g2)
    for (MorId f2 = 0; f2 < b.n_morphisms(); ++f2) {
      if (b.src[g2] != b.tgt[f2]) continue;
      if (b.is_identity(g2) || b.is_identity(f2)) continue;
      rules.push_back({{edge_of_mor[g2], edge_of_mor[f2]}, mor_word(b.compose(g2, f2))});
    }
  for (MorId m = 0; m < a.n_morphisms(); ++m) {
    MorId fm = f.mor_map[m], gm = g.mor_map[m];
    if (fm == gm) continue;
    if (b.is_identity(fm) && b.is_identity(gm)) continue;
    if (b.is_identity(fm))
      rules.push_back({{edge_of_mor[gm]}, empty_word(ocls[b.src[gm]])});
    else if (b.is_identity(gm))
      rules.push_back({{edge_of_mor[fm]}, empty_word(ocls[b.src[fm]])});
    else
      rules.push_back({{edge_of_mor[fm]}, {edge_of_mor[gm]}});
  }
  // symmetric closure, capped so rewriting cannot grow words unboundedly
  std::vector<Rewrite> rules_sym = rules;
  for (const Rewrite& r : rules)
    if (r.rhs[0] >= 0) rules_sym.push_back({r.rhs, r.lhs});

  // rules indexed by the leading edge of their left side
  auto index_rules = [&](const std::vector<Rewrite>& rs) {
    std::vector<std::vector<const Rewrite*>> idx(ne);
    for (const Rewrite& r : rs) idx[r.lhs[0]].push_back(&r);
    return idx;
  };
  auto rules_by_head = index_rules(rules);
  auto rules_sym_by_head = index_rules(rules_sym);

  WordDict dict;
  for (int cls = 0; cls < n_cls; ++cls) dict.intern(empty_word(cls));

  auto rewrite_at = [&](const std::vector<int>& w, const Rewrite& r, int pos) {
    std::vector<int> w2(w.begin(), w.begin() + pos);
    if (r.rhs[0] >= 0) w2.insert(w2.end(), r.rhs.begin(), r.rhs.end());
    for (size_t k = pos + r.lhs.size(); k < w.size(); ++k) w2.push_back(w[k]);
    if (w2.empty()) w2 = empty_word(word_src(w));
    return w2;
  };

  // unite wid with every single-step rewrite inside it (all rewritten words
  // are at most as long, hence already or newly interned)
  auto apply_rules = [&](int wid) {
    const std::vector<int> w = dict.words[wid];
    if (w[0] < 0) return;
    for (size_t pos = 0; pos < w.size(); ++pos)
      for (const Rewrite* r : rules_by_head[w[pos]]) {
        if (pos + r->lhs.size() > w.size()) continue;
        if (r->lhs.size() == 2 && w[pos + 1] != r->lhs[1]) continue;
        dict.unite(wid, dict.intern(rewrite_at(w, *r, static_cast<int>(pos))));
      }
  };

  // enumerate composable words level by level until no class is made of
  // maximal-length words only
  std::vector<size_t> level_start = {0, dict.words.size()};
  for (int e = 0; e < ne; ++e) dict.intern({e});
  level_start.push_back(dict.words.size());
  for (size_t i = level_start[1]; i < level_start[2]; ++i) apply_rules(static_cast<int>(i));

  int level = 1;
  while (true) {
    {
      std::map<int, size_t> minlen;
      for (size_t i = 0; i < dict.words.size(); ++i) {
        int r = dict.find(static_cast<int>(i));
        auto [it, fresh] = minlen.try_emplace(r, word_len(dict.words[i]));
        if (!fresh) it->second = std::min(it->second, word_len(dict.words[i]));
      }
      if (static_cast<int>(minlen.size()) > max_morphisms)
        fail(ErrKind::SizeBound, "coequalizer closure exceeds max_morphisms=" +
                                     std::to_string(max_morphisms) +
                                     "; the quotient may be infinite");
      bool stable = level >= 2;
      for (size_t i = level_start[level]; stable && i < dict.words.size(); ++i)
        if (minlen[dict.find(static_cast<int>(i))] >= static_cast<size_t>(level)) stable = false;
      if (stable) break;
    }
    ++level;
    const size_t from = level_start[level - 1], to = level_start[level];
    for (size_t i = from; i < to; ++i) {
      std::vector<int> w = dict.words[i];
      if (w[0] < 0) continue;
      for (int e = 0; e < ne; ++e) {
        if (esrc[e] != etgt[w[0]]) continue;
        std::vector<int> w2;
        w2.reserve(w.size() + 1);
        w2.push_back(e);
        w2.insert(w2.end(), w.begin(), w.end());
        dict.intern(w2);
        if (static_cast<long>(dict.words.size()) > word_cap)
          fail(ErrKind::SizeBound, "coequalizer closure word budget exceeded");
      }
    }
    level_start.push_back(dict.words.size());
    for (size_t i = level_start[level]; i < dict.words.size(); ++i)
      apply_rules(static_cast<int>(i));
  }

  // reduce an arbitrary composable word to a known congruence class,
  // exploring rewrites in both directions with a little length slack;
  // distinct classes reached this way were missed unions, so repair them
  auto reduce_to_class = [&](const std::vector<int>& w0) -> int {
    int id0 = dict.lookup(w0);
    if (id0 != -1) return dict.find(id0);
    const size_t max_len = w0.size() + 2;
    std::unordered_set<std::string> seen{pack_word(w0)};
    std::deque<std::vector<int>> queue{w0};
    int found = -1;
    while (!queue.empty()) {
      std::vector<int> w = queue.front();
      queue.pop_front();
      int id = dict.lookup(w);
      if (id != -1) {
        int r = dict.find(id);
        if (found == -1)
          found = r;
        else if (dict.find(found) != r)
          dict.unite(found, r);
        continue;
      }
      if (seen.size() > 20000)
        fail(ErrKind::SizeBound, "coequalizer reduction budget exceeded");
      if (w[0] < 0) continue;
      for (size_t pos = 0; pos < w.size(); ++pos)
        for (const Rewrite* r : rules_sym_by_head[w[pos]]) {
          if (pos + r->lhs.size() > w.size()) continue;
          if (r->lhs.size() == 2 && w[pos + 1] != r->lhs[1]) continue;
          std::vector<int> w2 = rewrite_at(w, *r, static_cast<int>(pos));
          if (word_len(w2) > max_len) continue;
          if (seen.insert(pack_word(w2)).second) queue.push_back(w2);
        }
    }
    if (found == -1)
      fail(ErrKind::Internal, "coequalizer: a composite word did not reduce to a known class");
    return dict.find(found);
  };

  auto better = [&](const std::vector<int>& x, const std::vector<int>& y) {
    if (word_len(x) != word_len(y)) return word_len(x) < word_len(y);
    return x < y;
  };
  auto collect_reps = [&]() {
    std::map<int, std::vector<int>> rep;
    for (size_t i = 0; i < dict.words.size(); ++i) {
      int r = dict.find(static_cast<int>(i));
      auto [it, fresh] = rep.try_emplace(r, dict.words[i]);
      if (!fresh && better(dict.words[i], it->second)) it->second = dict.words[i];
    }
    return rep;
  };

  // closing composites of representatives may reveal missing unions
  long last_unions = -1;
  while (dict.n_unions != last_unions) {
    last_unions = dict.n_unions;
    auto rep = collect_reps();
    for (auto& [r1, w1] : rep)
      for (auto& [r2, w2] : rep) {
        if (w1[0] < 0 || w2[0] < 0) continue;
        if (word_src(w2) != word_tgt(w1)) continue;
        std::vector<int> w = w2;
        w.insert(w.end(), w1.begin(), w1.end());
        reduce_to_class(w);
      }
  }

  auto rep = collect_reps();
  if (static_cast<int>(rep.size()) > max_morphisms)
    fail(ErrKind::SizeBound,
         "coequalizer closure exceeds max_morphisms=" + std::to_string(max_morphisms));

  // identities first (by object class), then classes ordered by representative
  std::vector<std::pair<std::vector<int>, int>> ordered(rep.size());
  std::transform(rep.begin(), rep.end(), ordered.begin(),
                 [](const auto& kv) { return std::make_pair(kv.second, kv.first); });
  std::sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
    bool ix = x.first[0] < 0, iy = y.first[0] < 0;
    if (ix != iy) return ix;
    if (ix && iy) return -1 - x.first[0] < -1 - y.first[0];
    return better(x.first, y.first);
  });
  std::map<int, MorId> class_mor;
  for (size_t i = 0; i < ordered.size(); ++i) class_mor[ordered[i].second] = static_cast<MorId>(i);

  FinCat q;
  q.n_objects = n_cls;
  const int mq = static_cast<int>(ordered.size());
  q.src.resize(mq);
  q.tgt.resize(mq);
  q.identity.assign(n_cls, kNoMor);
  q.comp.assign(static_cast<size_t>(mq) * mq, kNoMor);
  for (int i = 0; i < mq; ++i) {
    q.src[i] = word_src(ordered[i].first);
    q.tgt[i] = word_tgt(ordered[i].first);
  }
  for (int cls = 0; cls < n_cls; ++cls)
    q.identity[cls] = class_mor.at(dict.find(dict.lookup(empty_word(cls))));
  for (int i = 0; i < mq; ++i)
    for (int j = 0; j < mq; ++j) {
      const auto& wi = ordered[i].first;
      const auto& wj = ordered[j].first;
      if (word_src(wi) != word_tgt(wj)) continue;
      std::vector<int> w;
      if (wi[0] >= 0) w.insert(w.end(), wi.begin(), wi.end());
      if (wj[0] >= 0) w.insert(w.end(), wj.begin(), wj.end());
      if (w.empty()) w = empty_word(word_src(wj));
      q.comp[static_cast<size_t>(i) * mq + j] = class_mor.at(reduce_to_class(w));
    }

  CoeqResult out;
  out.cat = std::move(q);
  out.proj.dom = b;
  out.proj.cod = out.cat;
  out.proj.obj_map.assign(ocls.begin(), ocls.end());
  out.proj.mor_map.resize(b.n_morphisms());
  for (MorId m = 0; m < b.n_morphisms(); ++m)
    out.proj.mor_map[m] = class_mor.at(dict.find(dict.lookup(mor_word(m))));
  require_valid(out.cat, "coequalizer");
  require_valid(out.proj, "coequalizer");
  if (compose_functors(out.proj, f) != compose_functors(out.proj, g))
    fail(ErrKind::Internal, "coequalizer projection does not coequalize the pair");
  return out;
}

bool verify_coequalizer_against(const FunctorData& f, const FunctorData& g, const CoeqResult& ce,
                                const FinCat& x, std::string* why) {
  auto no = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  auto hs = enumerate_functors(ce.proj.dom, x);
  std::vector<FunctorData> coequalizing;
  for (auto& h : hs)
    if (compose_functors(h, f) == compose_functors(h, g)) coequalizing.push_back(h);
  auto us = enumerate_functors(ce.cat, x);
  std::set<std::string> seen;
  for (auto& u : us) {
    std::string k = exact_key(compose_functors(u, ce.proj));
    if (!seen.insert(k).second) return no("two functors from the quotient agree after projection");
  }
  if (seen.size() != coequalizing.size())
    return no("induced functor count mismatch: " + std::to_string(seen.size()) + " vs " +
              std::to_string(coequalizing.size()));
  for (auto& h : coequalizing)
    if (!seen.count(exact_key(h))) return no("a coequalizing functor fails to factor");
  return true;
}

// ---------------------------------------------------------------------------
// Functor enumeration and functor categories

std::vector<FunctorData> enumerate_functors(const FinCat& a, const FinCat& b, long cap) {
  std::vector<FunctorData> out;
  const int na = a.n_objects, ma = a.n_morphisms();
  std::vector<MorId> non_id;
  for (MorId m = 0; m < ma; ++m)
    if (!a.is_identity(m)) non_id.push_back(m);

  FunctorData cur;
  cur.dom = a;
  cur.cod = b;
  cur.obj_map.assign(na, -1);
  cur.mor_map.assign(ma, -1);

  auto comp_ok = [&](MorId just) {
    for (MorId g = 0; g < ma; ++g) {
      if (cur.mor_map[g] == -1) continue;
      for (MorId f = 0; f < ma; ++f) {
        if (cur.mor_map[f] == -1 || a.src[g] != a.tgt[f]) continue;
        MorId gf = a.compose(g, f);
        if (cur.mor_map[gf] == -1) continue;
        if (g != just && f != just && gf != just) continue;
        if (b.compose(cur.mor_map[g], cur.mor_map[f]) != cur.mor_map[gf]) return false;
      }
    }
    return true;
  };

  auto assign_mors = [&](auto&& self, size_t k) -> void {
    if (k == non_id.size()) {
      out.push_back(cur);
      if (cap >= 0 && static_cast<long>(out.size()) > cap)
        fail(ErrKind::SizeBound, "functor enumeration exceeds cap=" + std::to_string(cap));
      return;
    }
    MorId m = non_id[k];
    for (MorId j = 0; j < b.n_morphisms(); ++j) {
      if (b.src[j] != cur.obj_map[a.src[m]] || b.tgt[j] != cur.obj_map[a.tgt[m]]) continue;
      cur.mor_map[m] = j;
      if (comp_ok(m)) self(self, k + 1);
      cur.mor_map[m] = -1;
    }
  };

  // hom-set emptiness between assigned objects prunes object maps early
  std::vector<std::vector<bool>> hom_empty(b.n_objects, std::vector<bool>(b.n_objects, true));
  for (MorId j = 0; j < b.n_morphisms(); ++j) hom_empty[b.src[j]][b.tgt[j]] = false;
  auto objs_ok = [&](ObjId just) {
    for (MorId m : non_id) {
      ObjId x = a.src[m], y = a.tgt[m];
      if (x != just && y != just) continue;
      if (cur.obj_map[x] == -1 || cur.obj_map[y] == -1) continue;
      if (hom_empty[cur.obj_map[x]][cur.obj_map[y]]) return false;
    }
    return true;
  };

  auto assign_objs = [&](auto&& self, ObjId x) -> void {
    if (x == na) {
      for (ObjId y = 0; y < na; ++y) cur.mor_map[a.identity[y]] = b.identity[cur.obj_map[y]];
      assign_mors(assign_mors, 0);
      for (ObjId y = 0; y < na; ++y) cur.mor_map[a.identity[y]] = -1;
      return;
    }
    for (ObjId o = 0; o < b.n_objects; ++o) {
      cur.obj_map[x] = o;
      if (objs_ok(x)) self(self, x + 1);
    }
    cur.obj_map[x] = -1;
  };
  assign_objs(assign_objs, 0);
  return out;
}

std::vector<NatTransData> enumerate_nat_trans(const FunctorData& f, const FunctorData& g) {
  if (f.dom != g.dom || f.cod != g.cod)
    fail(ErrKind::Type, "natural transformations need parallel functors");
  const FinCat& a = f.dom;
  const FinCat& b = f.cod;
  std::vector<NatTransData> out;
  NatTransData cur;
  cur.src_fun = f;
  cur.tgt_fun = g;
  cur.components.assign(a.n_objects, -1);

  auto natural_so_far = [&](ObjId just) {
    for (MorId m = 0; m < a.n_morphisms(); ++m) {
      ObjId x = a.src[m], y = a.tgt[m];
      if (x != just && y != just) continue;
      if (cur.components[x] == -1 || cur.components[y] == -1) continue;
      if (b.compose(g.mor_map[m], cur.components[x]) !=
          b.compose(cur.components[y], f.mor_map[m]))
        return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, ObjId x) -> void {
    if (x == a.n_objects) {
      out.push_back(cur);
      return;
    }
    for (MorId c = 0; c < b.n_morphisms(); ++c) {
      if (b.src[c] != f.obj_map[x] || b.tgt[c] != g.obj_map[x]) continue;
      cur.components[x] = c;
      if (natural_so_far(x)) self(self, x + 1);
      cur.components[x] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

std::string fun_maps_key(const FunctorData& f) {
  std::string s;
  for (ObjId o : f.obj_map) {
    s += std::to_string(o);
    s += ',';
  }
  s += ';';
  for (MorId m : f.mor_map) {
    s += std::to_string(m);
    s += ',';
  }
  return s;
}

std::string nat_maps_key(const NatTransData& t) {
  std::string s = fun_maps_key(t.src_fun);
  s += '|';
  s += fun_maps_key(t.tgt_fun);
  s += '|';
  for (MorId m : t.components) {
    s += std::to_string(m);
    s += ',';
  }
  return s;
}

}  // namespace

int PowModel::object_index(const FunctorData& f) const {
  if (f.dom != dom_cat || f.cod != cod_cat) return -1;
  auto it = obj_idx.find(fun_maps_key(f));
  return it == obj_idx.end() ? -1 : it->second;
}

int PowModel::morphism_index(const NatTransData& t) const {
  if (t.src_fun.dom != dom_cat || t.src_fun.cod != cod_cat) return -1;
  auto it = mor_idx.find(nat_maps_key(t));
  return it == mor_idx.end() ? -1 : it->second;
}

PowModel build_pow_model(const FinCat& a, const FinCat& b, const SizeLimits& lim) {
  PowModel model;
  model.dom_cat = a;
  model.cod_cat = b;
  if (a == make_zero()) {
    model.cat = make_one();
    FunctorData empty;
    empty.dom = a;
    empty.cod = b;
    model.objects = {empty};
    model.morphisms = {identity_nat(empty)};
  } else if (a == make_one()) {
    model.cat = b;
    for (ObjId o = 0; o < b.n_objects; ++o) model.objects.push_back(determine_obj(b, o));
    for (MorId m = 0; m < b.n_morphisms(); ++m) {
      NatTransData t;
      t.src_fun = determine_obj(b, b.src[m]);
      t.tgt_fun = determine_obj(b, b.tgt[m]);
      t.components = {m};
      model.morphisms.push_back(std::move(t));
    }
  } else {
    model.objects = enumerate_functors(a, b, lim.max_objects);
    const int no = static_cast<int>(model.objects.size());
    FinCat& c = model.cat;
    std::vector<std::pair<int, int>> ends;  // per morphism: (src functor, tgt functor)
    for (int i = 0; i < no; ++i)
      for (int j = 0; j < no; ++j) {
        auto ts = enumerate_nat_trans(model.objects[i], model.objects[j]);
        for (auto& t : ts) {
          ends.push_back({i, j});
          model.morphisms.push_back(std::move(t));
          if (static_cast<int>(model.morphisms.size()) > lim.max_morphisms)
            fail(ErrKind::SizeBound, "functor category exceeds max_morphisms=" +
                                         std::to_string(lim.max_morphisms));
        }
      }
    c.n_objects = no;
    const int mc = static_cast<int>(model.morphisms.size());
    c.src.resize(mc);
    c.tgt.resize(mc);
    c.identity.assign(no, kNoMor);
    c.comp.assign(static_cast<size_t>(mc) * mc, kNoMor);
    std::unordered_map<std::string, int> by_key;
    for (int m = 0; m < mc; ++m) {
      c.src[m] = ends[m].first;
      c.tgt[m] = ends[m].second;
      by_key[nat_maps_key(model.morphisms[m])] = m;
    }
    for (int i = 0; i < no; ++i)
      c.identity[i] = by_key.at(nat_maps_key(identity_nat(model.objects[i])));
    for (int m2 = 0; m2 < mc; ++m2)
      for (int m1 = 0; m1 < mc; ++m1) {
        if (c.src[m2] != c.tgt[m1]) continue;
        c.comp[static_cast<size_t>(m2) * mc + m1] =
            by_key.at(nat_maps_key(vcomp(model.morphisms[m2], model.morphisms[m1])));
      }
    require_valid(c, "pow");
  }
  check_size(model.cat.n_objects, model.cat.n_morphisms(), lim, "functor category");
  for (size_t i = 0; i < model.objects.size(); ++i)
    model.obj_idx[fun_maps_key(model.objects[i])] = static_cast<int>(i);
  for (size_t i = 0; i < model.morphisms.size(); ++i)
    model.mor_idx[nat_maps_key(model.morphisms[i])] = static_cast<int>(i);
  return model;
}

FinCat pow(const FinCat& a, const FinCat& b, const SizeLimits& lim) {
  return build_pow_model(a, b, lim).cat;
}

FunctorData pow_on_functor(const FunctorData& f, const FinCat& c, const SizeLimits& lim) {
  PowModel mb = build_pow_model(f.cod, c, lim);
  PowModel ma = build_pow_model(f.dom, c, lim);
  FunctorData out;
  out.dom = mb.cat;
  out.cod = ma.cat;
  for (const FunctorData& gfun : mb.objects) {
    int idx = ma.object_index(compose_functors(gfun, f));
    if (idx < 0) fail(ErrKind::Internal, "pow_on_functor: missing precomposite");
    out.obj_map.push_back(idx);
  }
  for (const NatTransData& t : mb.morphisms) {
    NatTransData w;  // whisker along f
    w.src_fun = compose_functors(t.src_fun, f);
    w.tgt_fun = compose_functors(t.tgt_fun, f);
    w.components.resize(f.dom.n_objects);
    for (ObjId x = 0; x < f.dom.n_objects; ++x) w.components[x] = t.components[f.obj_map[x]];
    int idx = ma.morphism_index(w);
    if (idx < 0) fail(ErrKind::Internal, "pow_on_functor: missing whiskered transformation");
    out.mor_map.push_back(idx);
  }
  require_valid(out, "pow_on_functor");
  return out;
}

// ---------------------------------------------------------------------------
// Comma categories

CommaResult comma(const FunctorData& l, const FunctorData& r, const SizeLimits& lim) {
  if (l.cod != r.cod) fail(ErrKind::Type, "comma: functors must share a codomain");
  const FinCat& c = l.cod;
  PowModel arrows = build_pow_model(make_two(), c, lim);
  FunctorData cs = pow_on_functor(constant_functor(ConstantFun::S), c, lim);
  FunctorData ct = pow_on_functor(constant_functor(ConstantFun::T), c, lim);
  // cs, ct run from the arrow category to pow(One, c) = c
  PullbackResult ldc = pullback(l, cs);
  PullbackResult cdr = pullback(ct, r);
  PullbackResult total = pullback(ldc.to_r, cdr.to_l);
  CommaResult out;
  out.cat = total.cat;
  out.to_l = compose_functors(ldc.to_l, total.to_l);
  out.to_r = compose_functors(cdr.to_r, total.to_r);
  out.to_arrow = compose_functors(ldc.to_r, total.to_l);
  out.arrow_model = std::move(arrows);
  check_size(out.cat.n_objects, out.cat.n_morphisms(), lim, "comma");
  return out;
}

// ---------------------------------------------------------------------------
// Limits / colimits

namespace {

std::vector<DiagramBound> all_cones(const FunctorData& d, bool colimit_side) {
  const FinCat& j = d.dom;
  const FinCat& c = d.cod;
  std::vector<DiagramBound> cones;
  DiagramBound cur;
  cur.legs.assign(j.n_objects, -1);
  auto consistent = [&](ObjId just) {
    for (MorId m = 0; m < j.n_morphisms(); ++m) {
      ObjId x = j.src[m], y = j.tgt[m];
      if (x != just && y != just) continue;
      if (cur.legs[x] == -1 || cur.legs[y] == -1) continue;
      if (!colimit_side) {
        if (c.compose(d.mor_map[m], cur.legs[x]) != cur.legs[y]) return false;
      } else {
        if (c.compose(cur.legs[y], d.mor_map[m]) != cur.legs[x]) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, ObjId x) -> void {
    if (x == j.n_objects) {
      cones.push_back(cur);
      if (cones.size() > 2'000'000) fail(ErrKind::SizeBound, "cone search budget exceeded");
      return;
    }
    for (MorId m = 0; m < c.n_morphisms(); ++m) {
      if (!colimit_side) {
        if (c.src[m] != cur.apex || c.tgt[m] != d.obj_map[x]) continue;
      } else {
        if (c.src[m] != d.obj_map[x] || c.tgt[m] != cur.apex) continue;
      }
      cur.legs[x] = m;
      if (consistent(x)) self(self, x + 1);
      cur.legs[x] = -1;
    }
  };
  for (ObjId apex = 0; apex < c.n_objects; ++apex) {
    cur.apex = apex;
    rec(rec, 0);
  }
  return cones;
}

std::optional<DiagramBound> universal_bound(const FunctorData& d, bool colimit_side) {
  const FinCat& c = d.cod;
  const FinCat& j = d.dom;
  auto cones = all_cones(d, colimit_side);
  for (const DiagramBound& t : cones) {
    bool universal = true;
    for (const DiagramBound& s : cones) {
      int count = 0;
      for (MorId u = 0; u < c.n_morphisms(); ++u) {
        if (!colimit_side) {
          if (c.src[u] != s.apex || c.tgt[u] != t.apex) continue;
          bool ok = true;
          for (ObjId x = 0; x < j.n_objects; ++x)
            if (c.compose(t.legs[x], u) != s.legs[x]) {
              ok = false;
              break;
            }
          if (ok && ++count > 1) break;
        } else {
          if (c.src[u] != t.apex || c.tgt[u] != s.apex) continue;
          bool ok = true;
          for (ObjId x = 0; x < j.n_objects; ++x)
            if (c.compose(u, t.legs[x]) != s.legs[x]) {
              ok = false;
              break;
            }
          if (ok && ++count > 1) break;
        }
      }
      if (count != 1) {
        universal = false;
        break;
      }
    }
    if (universal) return t;  // first hit in enumeration order is the canonical choice
  }
  return std::nullopt;
}

}  // namespace

DiagramBound limit(const FunctorData& diagram, const SizeLimits&) {
  auto b = universal_bound(diagram, false);
  if (!b) fail(ErrKind::NoUniversal, "no limit for the diagram");
  return *b;
}

DiagramBound colimit(const FunctorData& diagram, const SizeLimits&) {
  auto b = universal_bound(diagram, true);
  if (!b) fail(ErrKind::NoUniversal, "no colimit for the diagram");
  return *b;
}

// ---------------------------------------------------------------------------
// Kan extensions

namespace {

// Decoded comma category (b ↓ g) or (g ↓ b) with its projection to dom(g)
// and, per object, the connecting morphism in cod(g).
struct KanComma {
  CommaResult cr;
  std::vector<ObjId> proj_a;
  std::vector<MorId> connect;
  std::map<std::pair<ObjId, MorId>, ObjId> index;  // (a, connect) -> comma object
};

KanComma kan_comma(KanSide side, const FunctorData& g, ObjId b_obj, const SizeLimits& lim) {
  const FinCat& b = g.cod;
  FunctorData point = determine_obj(b, b_obj);
  KanComma out{side == KanSide::Right ? comma(point, g, lim) : comma(g, point, lim), {}, {}, {}};
  const FunctorData& proj = side == KanSide::Right ? out.cr.to_r : out.cr.to_l;
  for (ObjId o = 0; o < out.cr.cat.n_objects; ++o) {
    ObjId a_obj = proj.obj_map[o];
    MorId conn = out.cr.arrow_model.objects[out.cr.to_arrow.obj_map[o]].mor_map[2];
    out.proj_a.push_back(a_obj);
    out.connect.push_back(conn);
    out.index[{a_obj, conn}] = o;
  }
  return out;
}

}  // namespace

KanResult kan_extension(KanSide side, const FunctorData& g, const FunctorData& f,
                        const SizeLimits& lim, long verify_cap) {
  if (g.dom != f.dom) fail(ErrKind::Type, "Kan extension: functors must share a domain");
  const FinCat& b = g.cod;
  const FinCat& c = f.cod;

  std::vector<KanComma> commas;
  std::vector<DiagramBound> bounds;
  for (ObjId bo = 0; bo < b.n_objects; ++bo) {
    KanComma kc = kan_comma(side, g, bo, lim);
    const FunctorData& proj = side == KanSide::Right ? kc.cr.to_r : kc.cr.to_l;
    auto bound = universal_bound(compose_functors(f, proj), side == KanSide::Left);
    if (!bound)
      fail(ErrKind::NoUniversal, "pointwise Kan extension: no " +
                                     std::string(side == KanSide::Left ? "colimit" : "limit") +
                                     " at object " + std::to_string(bo));
    commas.push_back(std::move(kc));
    bounds.push_back(std::move(*bound));
  }

  FunctorData r;
  r.dom = b;
  r.cod = c;
  for (ObjId bo = 0; bo < b.n_objects; ++bo) r.obj_map.push_back(bounds[bo].apex);
  r.mor_map.resize(b.n_morphisms());
  for (MorId m = 0; m < b.n_morphisms(); ++m) {
    ObjId x = b.src[m], y = b.tgt[m];
    MorId found = kNoMor;
    int n_found = 0;
    for (MorId u = 0; u < c.n_morphisms(); ++u) {
      if (c.src[u] != bounds[x].apex || c.tgt[u] != bounds[y].apex) continue;
      bool ok = true;
      if (side == KanSide::Right) {
        // the cone at x restricts along (y ↓ g) -> (x ↓ g)
        for (ObjId o = 0; o < commas[y].cr.cat.n_objects; ++o) {
          ObjId from =
              commas[x].index.at({commas[y].proj_a[o], b.compose(commas[y].connect[o], m)});
          if (c.compose(bounds[y].legs[o], u) != bounds[x].legs[from]) {
            ok = false;
            break;
          }
        }
      } else {
        // the cocone at y extends along (g ↓ x) -> (g ↓ y)
        for (ObjId o = 0; o < commas[x].cr.cat.n_objects; ++o) {
          ObjId to = commas[y].index.at({commas[x].proj_a[o], b.compose(m, commas[x].connect[o])});
          if (c.compose(u, bounds[x].legs[o]) != bounds[y].legs[to]) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        found = u;
        n_found++;
      }
    }
    if (n_found != 1)
      fail(ErrKind::Internal, "Kan extension: mediating morphism not unique at morphism " +
                                  std::to_string(m) + " (" + std::to_string(n_found) + ")");
    r.mor_map[m] = found;
  }
  require_valid(r, "kan_extension");

  NatTransData alpha;
  const FinCat& a = g.dom;
  if (side == KanSide::Right) {
    alpha.src_fun = compose_functors(r, g);
    alpha.tgt_fun = f;
  } else {
    alpha.src_fun = f;
    alpha.tgt_fun = compose_functors(r, g);
  }
  alpha.components.resize(a.n_objects);
  for (ObjId ao = 0; ao < a.n_objects; ++ao) {
    ObjId bo = g.obj_map[ao];
    alpha.components[ao] = bounds[bo].legs[commas[bo].index.at({ao, b.identity[bo]})];
  }
  require_valid(alpha, "kan_extension");

  KanResult out{std::move(r), std::move(alpha)};
  if (verify_cap >= 0) {
    std::string why;
    if (!verify_kan_universal(side, g, f, out, verify_cap, &why))
      fail(ErrKind::Internal, "Kan extension failed its universal property: " + why);
  }
  return out;
}

bool verify_kan_universal(KanSide side, const FunctorData& g, const FunctorData& f,
                          const KanResult& kr, long competitor_cap, std::string* why) {
  auto no = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const FinCat& b = g.cod;
  const FinCat& c = f.cod;
  std::vector<FunctorData> competitors;
  try {
    competitors = enumerate_functors(b, c, competitor_cap);
  } catch (const Error&) {
    if (why) *why = "skipped: competitor space over the cap";
    return true;
  }
  for (const FunctorData& h : competitors) {
    FunctorData hg = compose_functors(h, g);
    auto betas = side == KanSide::Right ? enumerate_nat_trans(hg, f) : enumerate_nat_trans(f, hg);
    auto gammas = side == KanSide::Right ? enumerate_nat_trans(h, kr.extension)
                                         : enumerate_nat_trans(kr.extension, h);
    for (const NatTransData& beta : betas) {
      int count = 0;
      for (const NatTransData& gamma : gammas) {
        bool ok = true;
        for (ObjId ao = 0; ao < g.dom.n_objects; ++ao) {
          MorId whisk = gamma.components[g.obj_map[ao]];
          MorId comp = side == KanSide::Right ? c.compose(kr.transform.components[ao], whisk)
                                              : c.compose(whisk, kr.transform.components[ao]);
          if (comp != beta.components[ao]) {
            ok = false;
            break;
          }
        }
        if (ok) count++;
      }
      if (count != 1)
        return no("a competitor admits " + std::to_string(count) + " comparison transformations");
    }
  }
  return true;
}

NatTransData kan_induced(const FunctorData& g, const FunctorData& f, const KanResult& kr,
                         const FunctorData& h, const NatTransData& beta) {
  const FinCat& c = f.cod;
  KanSide side;
  if (kr.transform.tgt_fun == f && kr.transform.src_fun == compose_functors(kr.extension, g))
    side = KanSide::Right;
  else if (kr.transform.src_fun == f && kr.transform.tgt_fun == compose_functors(kr.extension, g))
    side = KanSide::Left;
  else
    fail(ErrKind::Type, "kan_induced: the pair is not a Kan extension of the given functors");
  FunctorData hg = compose_functors(h, g);
  if (side == KanSide::Right) {
    if (beta.src_fun != hg || beta.tgt_fun != f)
      fail(ErrKind::Type, "kan_induced: expected a transformation H∘G -> F");
  } else {
    if (beta.src_fun != f || beta.tgt_fun != hg)
      fail(ErrKind::Type, "kan_induced: expected a transformation F -> H∘G");
  }
  auto gammas = side == KanSide::Right ? enumerate_nat_trans(h, kr.extension)
                                       : enumerate_nat_trans(kr.extension, h);
  std::vector<NatTransData> hits;
  for (const NatTransData& gamma : gammas) {
    bool ok = true;
    for (ObjId ao = 0; ao < g.dom.n_objects; ++ao) {
      MorId whisk = gamma.components[g.obj_map[ao]];
      MorId comp = side == KanSide::Right ? c.compose(kr.transform.components[ao], whisk)
                                          : c.compose(whisk, kr.transform.components[ao]);
      if (comp != beta.components[ao]) {
        ok = false;
        break;
      }
    }
    if (ok) hits.push_back(gamma);
  }
  if (hits.size() != 1)
    fail(ErrKind::Internal, "kan_induced: found " + std::to_string(hits.size()) +
                                " comparison transformations; not a Kan extension");
  return hits.front();
}

KanResult kan_lifting(const FunctorData& g, const FunctorData& f, const SizeLimits& lim) {
  if (g.cod != f.cod) fail(ErrKind::Type, "Kan lifting: functors must share a codomain");
  const FinCat& a = f.dom;
  const FinCat& cc = g.dom;
  const FinCat& b = f.cod;
  // the universal-property check below is quadratic in the candidate count,
  // so a blown-up candidate space reads as a size bound
  auto candidates = enumerate_functors(a, cc, 512);
  for (const FunctorData& r : candidates) {
    FunctorData gr = compose_functors(g, r);
    for (const NatTransData& alpha : enumerate_nat_trans(gr, f)) {
      bool universal = true;
      for (const FunctorData& h : candidates) {
        FunctorData gh = compose_functors(g, h);
        for (const NatTransData& beta : enumerate_nat_trans(gh, f)) {
          int count = 0;
          for (const NatTransData& gamma : enumerate_nat_trans(h, r)) {
            bool ok = true;
            for (ObjId x = 0; x < a.n_objects; ++x) {
              if (b.compose(alpha.components[x], g.mor_map[gamma.components[x]]) !=
                  beta.components[x]) {
                ok = false;
                break;
              }
            }
            if (ok) count++;
          }
          if (count != 1) {
            universal = false;
            break;
          }
        }
        if (!universal) break;
      }
      if (universal) return {r, alpha};
    }
  }
  fail(ErrKind::NoUniversal, "no Kan lifting exists");
}

// ---------------------------------------------------------------------------
// Composability functor

ComposableResult composable_functor(const FinCat& c, const SizeLimits& lim) {
  PowModel arrows = build_pow_model(make_two(), c, lim);
  FunctorData cs = pow_on_functor(constant_functor(ConstantFun::S), c, lim);
  FunctorData ct = pow_on_functor(constant_functor(ConstantFun::T), c, lim);
  PullbackResult pairs = pullback(cs, ct);  // objects (g, f) with src g = tgt f
  check_size(pairs.cat.n_objects, pairs.cat.n_morphisms(), lim, "composable pairs");

  FunctorData comp;
  comp.dom = pairs.cat;
  comp.cod = arrows.cat;
  for (ObjId o = 0; o < pairs.cat.n_objects; ++o) {
    MorId gm = arrows.objects[pairs.to_l.obj_map[o]].mor_map[2];
    MorId fm = arrows.objects[pairs.to_r.obj_map[o]].mor_map[2];
    int idx = arrows.object_index(determine_mor(c, c.compose(gm, fm)));
    if (idx < 0) fail(ErrKind::Internal, "composable: missing composite arrow object");
    comp.obj_map.push_back(idx);
  }
  for (MorId m = 0; m < pairs.cat.n_morphisms(); ++m) {
    const NatTransData& sq_g = arrows.morphisms[pairs.to_l.mor_map[m]];
    const NatTransData& sq_f = arrows.morphisms[pairs.to_r.mor_map[m]];
    // sq_f = (p, q) and sq_g = (q, r); the pasted square is (p, r)
    NatTransData pasted;
    pasted.src_fun = determine_mor(c, c.compose(sq_g.src_fun.mor_map[2], sq_f.src_fun.mor_map[2]));
    pasted.tgt_fun = determine_mor(c, c.compose(sq_g.tgt_fun.mor_map[2], sq_f.tgt_fun.mor_map[2]));
    pasted.components = {sq_f.components[0], sq_g.components[1]};
    int idx = arrows.morphism_index(pasted);
    if (idx < 0) fail(ErrKind::Internal, "composable: missing pasted square");
    comp.mor_map.push_back(idx);
  }
  require_valid(comp, "composable_functor");
  return {std::move(comp), std::move(arrows), std::move(pairs)};
}

// ---------------------------------------------------------------------------
// Skeleton

std::pair<FinCat, FunctorData> skeleton(const FinCat& c) {
  const int n = c.n_objects, m = c.n_morphisms();
  std::vector<MorId> inverse(m, kNoMor);
  for (MorId i = 0; i < m; ++i)
    for (MorId j = 0; j < m; ++j) {
      if (c.src[j] != c.tgt[i] || c.tgt[j] != c.src[i]) continue;
      if (c.compose(j, i) == c.identity[c.src[i]] && c.compose(i, j) == c.identity[c.tgt[i]]) {
        inverse[i] = j;
        break;
      }
    }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorId i = 0; i < m; ++i)
    if (inverse[i] != kNoMor) {
      int r1 = find(c.src[i]), r2 = find(c.tgt[i]);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  // the representative of each class is its least object
  std::vector<ObjId> rep_of(n);
  std::vector<ObjId> reps;
  std::vector<int> rep_idx(n, -1);
  for (ObjId x = 0; x < n; ++x) {
    ObjId r = find(x);
    rep_of[x] = r;
    if (rep_idx[r] == -1) {
      rep_idx[r] = static_cast<int>(reps.size());
      reps.push_back(r);
    }
  }
  std::vector<MorId> iso_to_rep(n, kNoMor);
  for (ObjId x = 0; x < n; ++x) {
    if (x == rep_of[x]) {
      iso_to_rep[x] = c.identity[x];
      continue;
    }
    for (MorId i = 0; i < m; ++i)
      if (inverse[i] != kNoMor && c.src[i] == x && c.tgt[i] == rep_of[x]) {
        iso_to_rep[x] = i;
        break;
      }
    if (iso_to_rep[x] == kNoMor) fail(ErrKind::Internal, "skeleton: missing chosen isomorphism");
  }

  std::vector<MorId> sub_mors;
  std::vector<int> mor_idx(m, -1);
  for (MorId i = 0; i < m; ++i)
    if (c.src[i] == rep_of[c.src[i]] && c.tgt[i] == rep_of[c.tgt[i]]) {
      mor_idx[i] = static_cast<int>(sub_mors.size());
      sub_mors.push_back(i);
    }
  FinCat sk;
  sk.n_objects = static_cast<int>(reps.size());
  const int ms = static_cast<int>(sub_mors.size());
  sk.src.resize(ms);
  sk.tgt.resize(ms);
  sk.identity.resize(sk.n_objects);
  sk.comp.assign(static_cast<size_t>(ms) * ms, kNoMor);
  for (int i = 0; i < ms; ++i) {
    sk.src[i] = rep_idx[c.src[sub_mors[i]]];
    sk.tgt[i] = rep_idx[c.tgt[sub_mors[i]]];
  }
  for (size_t k = 0; k < reps.size(); ++k) sk.identity[k] = mor_idx[c.identity[reps[k]]];
  for (int i = 0; i < ms; ++i)
    for (int j = 0; j < ms; ++j) {
      MorId gf = c.compose(sub_mors[i], sub_mors[j]);
      if (gf != kNoMor) sk.comp[static_cast<size_t>(i) * ms + j] = mor_idx[gf];
    }

  FunctorData q;
  q.dom = c;
  q.cod = sk;
  for (ObjId x = 0; x < n; ++x) q.obj_map.push_back(rep_idx[rep_of[x]]);
  for (MorId i = 0; i < m; ++i) {
    MorId moved = c.compose(iso_to_rep[c.tgt[i]], c.compose(i, inverse[iso_to_rep[c.src[i]]]));
    q.mor_map.push_back(mor_idx[moved]);
  }
  require_valid(sk, "skeleton");
  require_valid(q, "skeleton");
  return {std::move(sk), std::move(q)};
}

// ---------------------------------------------------------------------------
// Transformation algebra

NatTransData identity_nat(const FunctorData& f) {
  NatTransData t;
  t.src_fun = f;
  t.tgt_fun = f;
  t.components.resize(f.dom.n_objects);
  for (ObjId x = 0; x < f.dom.n_objects; ++x) t.components[x] = f.cod.identity[f.obj_map[x]];
  return t;
}

NatTransData vcomp(const NatTransData& b, const NatTransData& a) {
  if (a.tgt_fun != b.src_fun)
    fail(ErrKind::Type, "vertical composition: transformations do not share a middle functor");
  NatTransData t;
  t.src_fun = a.src_fun;
  t.tgt_fun = b.tgt_fun;
  const FinCat& c = a.src_fun.cod;
  t.components.resize(a.components.size());
  for (size_t x = 0; x < a.components.size(); ++x)
    t.components[x] = c.compose(b.components[x], a.components[x]);
  return t;
}

NatTransData hcomp(const NatTransData& b, const NatTransData& a) {
  if (a.src_fun.cod != b.src_fun.dom)
    fail(ErrKind::Type, "horizontal composition: shapes do not match");
  const FinCat& c = b.src_fun.cod;
  NatTransData t;
  t.src_fun = compose_functors(b.src_fun, a.src_fun);
  t.tgt_fun = compose_functors(b.tgt_fun, a.tgt_fun);
  t.components.resize(a.src_fun.dom.n_objects);
  for (ObjId x = 0; x < a.src_fun.dom.n_objects; ++x)
    t.components[x] =
        c.compose(b.tgt_fun.mor_map[a.components[x]], b.components[a.src_fun.obj_map[x]]);
  return t;
}

}  // namespace sammy
