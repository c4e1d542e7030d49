#include "tik/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tik/groupcorr.hpp"
#include "tik/io.hpp"
#include "tik/reductions.hpp"
#include "tik/s2d.hpp"

namespace tik {

namespace {

// FNV-1a over emitted artifact text; each add() is terminated so concatenations stay distinct.
class Digest {
 public:
  void add(const std::string& s) {
    for (unsigned char c : s) step(c);
    step(0xff);
  }
  void add(const Object& obj) { add(emit_object(obj)); }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  void step(unsigned char c) {
    h_ ^= c;
    h_ *= 1099511628211ull;
  }
  u64 h_ = 14695981039346656037ull;
};

u64 seed_for(int criterion, u64 a, u64 b) { return static_cast<u64>(criterion) * 1000003u + a * 1009u + b; }

// Tallies one family of checks and keeps the first failure message.
struct Tally {
  u64 total = 0, good = 0;
  std::string first_failure;
  void record(bool ok, const std::string& what) {
    ++total;
    if (ok) {
      ++good;
    } else if (first_failure.empty()) {
      first_failure = what;
    }
  }
  bool pass() const { return total > 0 && good == total; }
  std::string summary() const {
    std::string s = std::to_string(good) + "/" + std::to_string(total);
    if (!first_failure.empty()) s += " (first failure: " + first_failure + ")";
    return s;
  }
};

MatrixTuple independent_alternating(const Field& f, std::size_t n, std::size_t m, Rng& rng) {
  require(2 * m <= n * (n - 1), ErrorKind::Precondition, "more independent alternating slices than dim Lambda(n)");
  for (;;) {
    MatrixTuple t;
    for (std::size_t k = 0; k < m; ++k) t.push_back(random_alternating(f, n, rng));
    if (span_dim(t) == m) return t;
  }
}

Tensor3 space_tensor(const Field& f, std::size_t side, const MatrixTuple& t) { return Tensor3::from_frontal(f, side, side, t); }

// Class ids (first-seen order) for a list of keys.
template <class Key>
std::vector<std::size_t> class_ids(const std::vector<Key>& keys, std::size_t* count) {
  std::map<Key, std::size_t> ids;
  std::vector<std::size_t> out;
  for (const auto& k : keys) out.push_back(ids.emplace(k, ids.size()).first->second);
  *count = ids.size();
  return out;
}

// Pairs (i, j) where "same class" disagrees between the two partitions.
u64 partition_mismatches(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  u64 bad = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) bad += (a[i] == a[j]) != (b[i] == b[j]);
  return bad;
}

// ---- 1: witness round trips ----

CriterionResult witness_round_trips(Level level, std::ostream& log) {
  const int trials = level == Level::Full ? 200 : 10;
  Tally all;
  const auto& regs = reductions();
  for (std::size_t r = 0; r < regs.size(); ++r) {
    const Reduction& red = regs[r];
    for (u32 p : {2u, 3u, 5u}) {
      Rng rng(seed_for(1, r, p));
      Tally fwd, rec;
      Digest dg;
      for (int t = 0; t < trials; ++t) {
        const std::string where = red.name + " p=" + std::to_string(p) + " trial " + std::to_string(t);
        try {
          const SourcePair s = red.sample(p, rng);
          require(verify_witness(red.source, s.a, s.b, s.witness), ErrorKind::WitnessInvalid, "sampled source witness");
          const Instance ta = red.construct(s.a, s.params), tb = red.construct(s.b, s.params);
          const Witness fw = red.forward(s.a, s.b, s.witness, s.params);
          fwd.record(verify_witness(red.target, ta, tb, fw), where + ": forward witness rejected");
          const Witness back = red.recover(s.a, s.b, fw, s.params);
          rec.record(verify_witness(red.source, s.a, s.b, back), where + ": recovered witness rejected");
          dg.add(object_from_instance(red.target, ta));
          dg.add(Object(fw));
          dg.add(Object(back));
        } catch (const Error& e) {
          fwd.record(false, where + ": " + e.what());
          rec.record(false, where + ": " + e.what());
        }
      }
      log << "[1] " << red.name << " p=" << p << " forward " << fwd.summary() << " recover " << rec.summary()
          << " digest " << dg.hex() << "\n";
      for (const Tally* t : {&fwd, &rec}) {
        all.total += t->total;
        all.good += t->good;
        if (all.first_failure.empty()) all.first_failure = t->first_failure;
      }
    }
  }
  return {1, "witness round-trips", all.pass(),
          std::to_string(regs.size()) + " reductions x 3 fields x " + std::to_string(trials) + " trials, checks " + all.summary()};
}

// ---- 2: exhaustive iff-soundness ----

struct SubResult {
  bool pass = false;
  std::string summary;
};

std::vector<Mat> all_gl(const Field& f, std::size_t n) {
  std::vector<Mat> out;
  enumerate_gl(f, n, default_budget(), [&](const Mat& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

Tensor3 tensor_from_bits(const Field& f, std::size_t l, std::size_t n, std::size_t m, u64 bits) {
  Tensor3 t(f, l, n, m);
  for (std::size_t e = 0; e < t.size(); ++e) t.data()[e] = (bits >> e) & 1;
  return t;
}

Mat flattened_rows(const MatrixTuple& s) {
  const std::size_t cells = s.front().rows() * s.front().cols();
  Mat flat(s.front().field(), s.size(), cells);
  for (std::size_t k = 0; k < s.size(); ++k)
    for (std::size_t e = 0; e < cells; ++e) flat(k, e) = s[k].data()[e];
  return flat;
}

// Least row-reduced basis of span(P^-1 S P) over all P in GL(side, 2).
std::vector<u32> conjugacy_key(const MatrixTuple& s, const std::vector<std::pair<Mat, Mat>>& group) {
  const std::size_t side = s.front().rows();
  std::vector<u32> best;
  for (const auto& [p, pinv] : group) {
    MatrixTuple img;
    for (const auto& m : s) img.push_back(pinv * m * p);
    std::vector<u32> key = rref(flattened_rows(img)).m.data();
    if (best.empty() || key < best) best = std::move(key);
  }
  best.insert(best.begin(), static_cast<u32>(side));
  return best;
}

SubResult conjugacy_exhaustive(bool with_unit, std::ostream& log) {
  const Field f(2);
  std::vector<Mat> gl2 = all_gl(f, 2);
  std::map<std::size_t, std::vector<std::pair<Mat, Mat>>> groups;
  std::map<std::vector<u32>, std::vector<u32>> span_cache;

  std::vector<std::vector<u32>> ti3_keys, conj_keys;
  std::size_t nondegenerate = 0;
  for (u64 bits = 0; bits < 256; ++bits) {
    const Tensor3 t = tensor_from_bits(f, 2, 2, 2, bits);
    // Source side: the orbit minimum under all of GL(2,2)^3.
    std::vector<u32> best;
    for (const auto& x : gl2)
      for (const auto& y : gl2)
        for (const auto& z : gl2) {
          std::vector<u32> d = act3(t, x, y, z).data();
          if (best.empty() || d < best) best = std::move(d);
        }
    ti3_keys.push_back(best);

    // Target side: degenerate inputs go through their nondegenerate core first.
    const Core core = nondegenerate_core(t);
    nondegenerate += is_nondegenerate(t);
    if (core.t.size() == 0) {
      conj_keys.push_back({0});
      continue;
    }
    const MatrixTuple s = ti3_to_conjugacy(core.t, with_unit);
    const std::size_t side = s.front().rows();
    std::vector<u32> span = rref(flattened_rows(s)).m.data();
    span.insert(span.begin(), static_cast<u32>(side));
    auto it = span_cache.find(span);
    if (it == span_cache.end()) {
      auto& group = groups[side];
      if (group.empty())
        for (const auto& p : all_gl(f, side)) group.emplace_back(p, inverse(p));
      it = span_cache.emplace(span, conjugacy_key(s, group)).first;
    }
    conj_keys.push_back(it->second);
  }
  std::size_t ti3_classes = 0, conj_classes = 0;
  const auto a = class_ids(ti3_keys, &ti3_classes);
  const auto b = class_ids(conj_keys, &conj_classes);
  const u64 bad = partition_mismatches(a, b);
  std::ostringstream s;
  s << (with_unit ? "3ti-to-conjugacy-unital" : "3ti-to-conjugacy") << ": 256 tensors (" << nondegenerate
    << " nondegenerate), " << ti3_classes << " TI3 classes, " << conj_classes << " conjugacy classes, 65536 pairs, "
    << bad << " disagreements";
  log << "[2a] " << s.str() << "\n";
  return {bad == 0, s.str()};
}

SubResult moncode_exhaustive(std::ostream& log) {
  const Field f(2);
  std::vector<Mat> codes;
  for (u64 bits = 0; bits < 16; ++bits) {
    Mat c(f, 2, 2);
    for (std::size_t e = 0; e < 4; ++e) c.data()[e] = (bits >> e) & 1;
    if (rank(c) == 2) codes.push_back(c);
  }
  u64 pairs = 0, bad = 0, yes = 0;
  Digest dg;
  for (const auto& a : codes)
    for (const auto& b : codes) {
      ++pairs;
      const bool source = decide_code_monomial(a, b, default_budget()).has_value();
      const Tensor3 ta = moncode_to_3ti(a), tb = moncode_to_3ti(b);
      const auto w = decide_3ti_smart(ta, tb, default_budget());
      const bool target = w && verify_witness(Problem::TI3, ta, tb, *w);
      bad += source != target;
      yes += target;
      if (w) dg.add(Object(*w));
    }
  std::ostringstream s;
  s << "moncode-to-3ti d=2 n=2 GF(2): " << codes.size() << " codes, " << pairs << " pairs, " << yes
    << " equivalent, " << bad << " disagreements, digest " << dg.hex();
  log << "[2b] " << s.str() << "\n";
  return {bad == 0 && pairs > 0, s.str()};
}

// Orbit partition of `forms` under GL(n): each unassigned form's full orbit is enumerated.
// reach[j] maps the class representative to forms[j].
std::vector<std::size_t> form_orbits(const std::vector<FormD>& forms, std::vector<Mat>& reach, std::vector<std::size_t>& rep) {
  const Field& f = forms.front().field();
  const std::size_t n = forms.front().vars();
  std::map<std::vector<u32>, std::size_t> where;
  for (std::size_t j = 0; j < forms.size(); ++j) where.emplace(forms[j].coeffs(), j);
  const std::size_t unset = forms.size();
  std::vector<std::size_t> cls(forms.size(), unset);
  reach.assign(forms.size(), Mat::identity(f, n));
  rep.assign(forms.size(), 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (cls[i] != unset) continue;
    const std::size_t id = next++;
    enumerate_gl(f, n, default_budget(), [&](const Mat& p) {
      auto it = where.find(act_form(forms[i], p).coeffs());
      if (it != where.end() && cls[it->second] == unset) {
        cls[it->second] = id;
        reach[it->second] = p;
        rep[it->second] = i;
      }
      return true;
    });
  }
  return cls;
}

SubResult cubic_exhaustive(std::ostream& log) {
  const Field f(3);
  const std::size_t degree = 4;
  std::vector<FormD> cubics, padded;
  for (u64 idx = 0; idx < 81; ++idx) {
    FormD c(f, 2, 3);
    const Vec digits = vec_from_index(idx, 4, 3);
    for (std::size_t e = 0; e < 4; ++e) c.set(c.basis().at(e), digits[e]);
    cubics.push_back(c);
    padded.push_back(cubic_to_degree_d(c, degree));
  }
  std::vector<Mat> reach_src, reach_tgt;
  std::vector<std::size_t> rep_src, rep_tgt;
  const auto src = form_orbits(cubics, reach_src, rep_src);
  const auto tgt = form_orbits(padded, reach_tgt, rep_tgt);
  const u64 bad = partition_mismatches(src, tgt);
  const std::size_t src_classes = *std::max_element(src.begin(), src.end()) + 1;
  const std::size_t tgt_classes = *std::max_element(tgt.begin(), tgt.end()) + 1;

  // Every target equivalence found by the orbit walk must also recover to a source equivalence.
  Tally recovered;
  for (std::size_t j = 0; j < padded.size(); ++j) {
    const std::size_t r = rep_tgt[j];
    const Witness tw{Tag::FormEq, {reach_tgt[j]}};
    try {
      require(verify_witness(Problem::FormEq, padded[r], padded[j], tw), ErrorKind::WitnessInvalid, "orbit witness");
      const Witness sw{Tag::FormEq, {cubic_recover(cubics[r], cubics[j], degree, reach_tgt[j], default_budget())}};
      recovered.record(verify_witness(Problem::FormEq, cubics[r], cubics[j], sw), "form " + std::to_string(j));
    } catch (const Error& e) {
      recovered.record(false, "form " + std::to_string(j) + ": " + e.what());
    }
  }
  std::ostringstream s;
  s << "cubic-to-degree-d n=2 d=4 GF(3): 81 cubics, " << src_classes << " GL(2,3) classes, " << tgt_classes
    << " GL(3,3) classes of padded forms, 6561 pairs, " << bad << " disagreements, recovery " << recovered.summary();
  log << "[2c] " << s.str() << "\n";
  return {bad == 0 && recovered.pass(), s.str()};
}

std::vector<Graph> all_simple_graphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) slots.push_back({u, v});
  std::vector<Graph> out;
  for (u64 mask = 0; mask < (u64{1} << slots.size()); ++mask) {
    Graph g;
    g.n = n;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((mask >> s) & 1) g.edges.push_back(slots[s]);
    out.push_back(g);
  }
  return out;
}

SubResult graph_exhaustive(Level level, std::ostream& log) {
  const Reduction& to_alt = find_reduction("graph-to-altspace");
  const Reduction& gadget = find_reduction("monomial-gadget");
  const ReductionParams params{2, 4};
  const Field f(2);
  const std::size_t max_n = level == Level::Full ? 4 : 3;
  u64 pairs = 0, bad_mid = 0, bad_target = 0, undecided = 0, by_witness = 0, by_invariant = 0, by_search = 0;
  std::string first_failure;
  Digest dg;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::vector<Graph> graphs = all_simple_graphs(n);
    // Source oracle: least relabelled edge list over all of S_n.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> keys;
    for (const auto& g : graphs) {
      auto best = g.canonical_edges();
      enumerate_permutations(n, [&](const std::vector<std::size_t>& perm) {
        best = std::min(best, act_graph(g, perm).canonical_edges());
        return true;
      });
      keys.push_back(best);
    }
    std::vector<Instance> mid, target;
    std::vector<std::vector<u64>> histograms;
    for (const auto& g : graphs) {
      mid.push_back(to_alt.construct(g, params));
      target.push_back(gadget.construct(mid.back(), params));
      const auto& t = std::get<Tensor3>(target.back());
      // Isometries permute the vectors u and preserve dim span{S u}, so the count per rank is invariant.
      std::vector<u64> h(t.dim(0) + 1, 0);
      for (std::size_t r : lateral_rank_table(t.frontal(), t.dim(0), default_budget())) ++h[r];
      histograms.push_back(h);
    }
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = 0; j < graphs.size(); ++j) {
        ++pairs;
        const bool source = keys[i] == keys[j];
        const std::string where = "n=" + std::to_string(n) + " graphs " + std::to_string(i) + "," + std::to_string(j);
        const bool middle = decide(Problem::MonomialIsometry, mid[i], mid[j], default_budget()).has_value();
        if (middle != source) {
          ++bad_mid;
          if (first_failure.empty()) first_failure = where + ": monomial isometry disagrees";
        }

        // Target side: a verified isometry of the gadgets certifies YES, a histogram
        // difference certifies NO, and anything else falls back to the full isometry search.
        std::optional<bool> decided;
        if (histograms[i] != histograms[j]) {
          decided = false;
          ++by_invariant;
        } else {
          const std::size_t m = std::get<Tensor3>(mid[i]).dim(2);
          enumerate_monomial(f, n, default_budget(), [&](const MonomialMatrix& mm) {
            const Witness w{Tag::Isometry, {mm.expand(f), Mat::identity(f, m)}};
            const Witness fw = gadget.forward(mid[i], mid[j], w, params);
            if (!verify_witness(Problem::Isometry, target[i], target[j], fw)) return true;
            decided = true;
            dg.add(Object(fw));
            return false;
          });
          if (decided) {
            ++by_witness;
          } else {
            try {
              decided = decide(Problem::Isometry, target[i], target[j], 10000000).has_value();
              ++by_search;
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::Budget) throw;
              ++undecided;
              if (first_failure.empty()) first_failure = where + ": target undecided within budget";
            }
          }
        }
        if (decided && *decided != source) {
          ++bad_target;
          if (first_failure.empty()) first_failure = where + ": gadget isometry disagrees";
        }
      }
  }
  std::ostringstream s;
  s << "graph-to-altspace + monomial-gadget, all graphs on 1.." << max_n << " vertices over GF(2): " << pairs
    << " pairs, altspace disagreements " << bad_mid << ", gadget disagreements " << bad_target << ", undecided "
    << undecided << " (decided by forwarded witness " << by_witness << ", rank histogram " << by_invariant
    << ", full search " << by_search << "), digest " << dg.hex();
  if (!first_failure.empty()) s << ", first failure: " << first_failure;
  log << "[2d] " << s.str() << "\n";
  return {bad_mid == 0 && bad_target == 0 && undecided == 0, s.str()};
}

CriterionResult exhaustive_soundness(Level level, std::ostream& log) {
  std::vector<SubResult> parts;
  parts.push_back(conjugacy_exhaustive(false, log));
  parts.push_back(conjugacy_exhaustive(true, log));
  parts.push_back(moncode_exhaustive(log));
  parts.push_back(cubic_exhaustive(log));
  parts.push_back(graph_exhaustive(level, log));
  bool pass = true;
  std::string failed;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!parts[i].pass) {
      pass = false;
      failed += (failed.empty() ? "" : "; ") + parts[i].summary;
    }
  return {2, "exhaustive iff-soundness", pass,
          pass ? "conjugacy (plain and unital), moncode, cubic and graph checks agree with brute force on every pair" : failed};
}

// ---- 3: gadget rank profiles ----

struct RankCheck {
  Tally tally;
  void bound(bool ok, const std::string& construction, std::size_t instance, const std::string& rule, std::size_t rk) {
    tally.record(ok, construction + " instance " + std::to_string(instance) + ": " + rule + " has rank " + std::to_string(rk));
  }
};

// Coefficient vector over `side` lateral indices; each block [lo, hi) is switched on with probability 1/2.
Vec block_combination(const Field& f, std::size_t side, const std::vector<std::size_t>& cuts, Rng& rng) {
  for (;;) {
    Vec c(side, 0);
    for (std::size_t b = 0; b + 1 < cuts.size(); ++b)
      if (rng.below(2))
        for (std::size_t j = cuts[b]; j < cuts[b + 1]; ++j) c[j] = rng.elem(f);
    if (std::any_of(c.begin(), c.end(), [](u32 x) { return x != 0; })) return c;
  }
}

bool touches(const Vec& c, std::size_t lo, std::size_t hi) {
  for (std::size_t j = lo; j < hi; ++j)
    if (c[j]) return true;
  return false;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

void alt_gadget_profile(bool symmetric, int instances, int combos, RankCheck& rc, Digest& dg) {
  const std::string name = symmetric ? "3ti-to-sym-isometry" : "3ti-to-alt-isometry";
  Rng rng(seed_for(3, symmetric, 0));
  const u32 primes[] = {2, 3, 5};
  for (int inst = 0; inst < instances; ++inst) {
    const Field f(primes[rng.below(3)]);
    // Nondegenerate shapes need every side at most the product of the other two.
    std::size_t l, n, m;
    do {
      l = 1 + rng.below(3), n = l + rng.below(4 - l), m = 1 + rng.below(3);
    } while (n > l * m || m > l * n);
    Tensor3 t(f, l, n, m);
    do {
      for (auto& x : t.data()) x = rng.elem(f);
    } while (!is_nondegenerate(t));
    const MatrixTuple s = symmetric ? ti3_to_sym_isometry(t) : ti3_to_alt_isometry(t);
    const std::size_t side = s.front().rows();
    dg.add(Object(space_tensor(f, side, s)));
    for (std::size_t j = 0; j < side; ++j) {
      const std::size_t r = lateral_rank(s, unit(side, j));
      if (j < l) {
        rc.bound(r >= 2 * n + 1 && r <= 3 * n + 1, name, inst, "U slice " + std::to_string(j), r);
      } else if (j < l + n) {
        rc.bound(r >= 4 * n + 2 && r <= 5 * n + 2, name, inst, "V slice " + std::to_string(j), r);
      } else {
        rc.bound(r <= n, name, inst, "gadget slice " + std::to_string(j), r);
      }
    }
    for (int c = 0; c < combos; ++c) {
      const Vec u = block_combination(f, side, {0, l, l + n, side}, rng);
      const std::size_t r = lateral_rank(s, u);
      if (touches(u, l, l + n)) {
        rc.bound(r >= 4 * n + 2, name, inst, "combination with a V slice", r);
      } else {
        rc.bound(r <= 4 * n + 1, name, inst, "combination without V slices", r);
      }
      if (touches(u, 0, l)) rc.bound(r >= 2 * n + 1, name, inst, "combination with a U slice", r);
    }
  }
}

void moncode_profile(int instances, int combos, RankCheck& rc, Digest& dg) {
  Rng rng(seed_for(3, 2, 0));
  const u32 primes[] = {2, 3, 5};
  for (int inst = 0; inst < instances; ++inst) {
    const Field f(primes[rng.below(3)]);
    const std::size_t d = 2 + rng.below(2), n = d + rng.below(5 - d);
    Mat code;
    do {
      code = random_mat(f, d, n, rng);
    } while (rank(code) != d);
    const MatrixTuple s = moncode_to_3ti(code).frontal();
    dg.add(Object(code));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = lateral_rank(s, unit(n, j));
      rc.bound(r == 2 || r == 3, "moncode-to-3ti", inst, "lateral slice " + std::to_string(j), r);
    }
    for (int c = 0; c < combos; ++c) {
      Vec u(n, 0);
      while (std::count_if(u.begin(), u.end(), [](u32 x) { return x != 0; }) < 2)
        for (auto& x : u) x = rng.elem(f);
      const std::size_t r = lateral_rank(s, u);
      rc.bound(r >= 4, "moncode-to-3ti", inst, "combination of several slices", r);
    }
  }
}

void search_gadget_profile(int instances, int combos, RankCheck& rc, Digest& dg) {
  Rng rng(seed_for(3, 3, 0));
  const u32 primes[] = {2, 3, 5};
  for (int inst = 0; inst < instances; ++inst) {
    const Field f(primes[rng.below(3)]);
    const std::size_t n = 2 + rng.below(3), i = 1 + rng.below(n - 1);
    const std::size_t m = 1 + rng.below(std::min<std::size_t>(3, n * (n - 1) / 2));
    const MatrixTuple g = individualization_gadget(independent_alternating(f, n, m, rng), i);
    const std::size_t side = g.front().rows();
    dg.add(Object(space_tensor(f, side, g)));
    for (std::size_t j = 0; j < side; ++j) {
      const std::size_t r = lateral_rank(g, unit(side, j));
      if (j < i) {
        rc.bound(r >= 2 * n && r < 3 * n, "individualization gadget", inst, "individualized slice " + std::to_string(j), r);
      } else if (j < n) {
        rc.bound(r >= n && r < 2 * n, "individualization gadget", inst, "free slice " + std::to_string(j), r);
      } else {
        rc.bound(r >= 1 && r < n, "individualization gadget", inst, "padding slice " + std::to_string(j), r);
      }
    }
    for (int c = 0; c < combos; ++c) {
      const Vec u = block_combination(f, side, {0, i, n, side}, rng);
      const std::size_t r = lateral_rank(g, u);
      if (touches(u, 0, i)) {
        rc.bound(r >= 2 * n, "individualization gadget", inst, "combination with an individualized slice", r);
      } else if (touches(u, i, n)) {
        rc.bound(r >= n, "individualization gadget", inst, "combination with a free slice", r);
      } else {
        rc.bound(r >= 1, "individualization gadget", inst, "combination of padding slices", r);
      }
    }
  }
}

CriterionResult rank_profiles(Level level, std::ostream& log) {
  const int instances = level == Level::Full ? 100 : 10, combos = level == Level::Full ? 100 : 10;
  bool pass = true;
  std::string detail;
  auto report = [&](const std::string& name, RankCheck& rc, const Digest& dg) {
    log << "[3] " << name << ": bounds held " << rc.tally.summary() << ", digest " << dg.hex() << "\n";
    pass = pass && rc.tally.pass();
    detail += (detail.empty() ? "" : ", ") + name + " " + rc.tally.summary();
  };
  for (bool symmetric : {false, true}) {
    RankCheck rc;
    Digest dg;
    alt_gadget_profile(symmetric, instances, combos, rc, dg);
    report(symmetric ? "3ti-to-sym-isometry" : "3ti-to-alt-isometry", rc, dg);
  }
  {
    RankCheck rc;
    Digest dg;
    moncode_profile(instances, combos, rc, dg);
    report("moncode-to-3ti", rc, dg);
  }
  {
    RankCheck rc;
    Digest dg;
    search_gadget_profile(instances, combos, rc, dg);
    report("individualization gadget", rc, dg);
  }
  return {3, "gadget rank profiles", pass, std::to_string(instances) + " instances x " + std::to_string(combos) +
                                              " combinations per construction: " + detail};
}

// ---- 4: path algebras ----

// d + n_d + the number of chain paths of length 1 .. d-2, written as a closed sum.
u64 path_dimension_formula(const std::vector<std::size_t>& dims) {
  const std::size_t d = dims.size();
  u64 total = d + dims[d - 1];
  for (std::size_t len = 1; len + 2 <= d; ++len)
    for (std::size_t start = 0; start + len <= d - 1; ++start) {
      u64 prod = 1;
      for (std::size_t j = start; j < start + len; ++j) prod *= dims[j];
      total += prod;
    }
  return total;
}

std::vector<std::vector<std::size_t>> dims_up_to(std::size_t order, std::size_t max_side) {
  std::vector<std::vector<std::size_t>> out;
  const u64 count = checked_pow(max_side, order);
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<std::size_t> dims;
    for (u32 x : vec_from_index(idx, order, static_cast<u32>(max_side))) dims.push_back(x + 1);
    out.push_back(dims);
  }
  return out;
}

std::vector<Graph> all_digraphs(std::size_t n, std::size_t max_multiplicity) {
  std::vector<Graph> out;
  const u64 count = checked_pow(max_multiplicity + 1, n * n);
  for (u64 idx = 0; idx < count; ++idx) {
    const Vec mult = vec_from_index(idx, n * n, static_cast<u32>(max_multiplicity + 1));
    Graph g;
    g.n = n;
    g.directed = true;
    for (std::size_t e = 0; e < n * n; ++e)
      for (u32 k = 0; k < mult[e]; ++k) g.edges.push_back({e / n, e % n});
    out.push_back(g);
  }
  return out;
}

CriterionResult path_algebras(Level level, std::ostream& log) {
  Tally dimension, associative, gap, grigoriev;
  Digest dg;
  Rng rng(seed_for(4, 0, 0));
  std::vector<std::vector<std::size_t>> shapes = dims_up_to(3, 3);
  for (const auto& s : dims_up_to(4, 2)) shapes.push_back(s);
  for (const auto& dims : shapes) {
    std::string label = "(";
    for (std::size_t i = 0; i < dims.size(); ++i) label += (i ? "," : "") + std::to_string(dims[i]);
    label += ")";
    for (u32 p : {2u, 3u}) {
      const Field f(p);
      TensorD t(f, dims);
      for (auto& x : t.data()) x = rng.elem(f);
      const DtiAlgebra alg = dti_to_algebra(t);
      dg.add(Object(alg.algebra));
      const u64 formula = path_dimension_formula(dims);
      dimension.record(alg.algebra.dim() == formula,
                       label + ": dimension " + std::to_string(alg.algebra.dim()) + " vs " + std::to_string(formula));
      // The displayed count also includes the full-length chains, which the tensor relation rewrites.
      u64 chains = 1;
      for (std::size_t j = 0; j + 1 < dims.size(); ++j) chains *= dims[j];
      gap.record(dti_displayed_dimension(dims) == formula + chains, label + ": displayed count gap");
      associative.record(alg.algebra.associative(), label + " p=" + std::to_string(p) + ": not associative");
    }
  }
  for (u32 p : {2u, 3u}) {
    const Field f(p);
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& g : all_digraphs(n, 1))
        grigoriev.record(grigoriev_reconstruct(grigoriev_algebra(g, f), n) == g, "digraph on " + std::to_string(n));
    for (std::size_t n = 1; n <= 2; ++n)
      for (const auto& g : all_digraphs(n, 2))
        grigoriev.record(grigoriev_reconstruct(grigoriev_algebra(g, f), n) == g, "multigraph on " + std::to_string(n));
  }
  (void)level;
  log << "[4] dti-to-algebra over " << shapes.size() << " shapes x 2 fields: dimension " << dimension.summary()
      << ", displayed-count gap equals the full-chain count " << gap.summary() << ", associative "
      << associative.summary() << ", digest " << dg.hex() << "\n";
  log << "[4] grigoriev reconstruct round trips " << grigoriev.summary() << "\n";
  const bool pass = dimension.pass() && associative.pass() && grigoriev.pass() && gap.pass();
  return {4, "path-algebra checks", pass,
          "dimension " + dimension.summary() + ", associativity " + associative.summary() + ", grigoriev " + grigoriev.summary()};
}

// ---- 5: Baer and Lazard ----

CriterionResult baer_lazard(Level level, std::ostream& log) {
  const int samples = level == Level::Full ? 3 : 1;
  const int exp_log_trials = level == Level::Full ? 1000 : 100;
  Tally order, exponent, class2, pseudo, exp_log;
  Digest dg;
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 1}, {3, 1}, {3, 2}, {4, 1}};
  for (u32 p : {3u, 5u}) {
    const Field f(p);
    for (const auto& [n, m] : shapes) {
      Rng rng(seed_for(5, n * 10 + m, p));
      for (int s = 0; s < samples; ++s) {
        const std::string where = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        const MatrixTuple a = independent_alternating(f, n, m, rng);
        const MatrixGroup g = baer_group(a);
        dg.add(Object(g));
        const std::vector<Mat> elems = enumerate_group(g, default_budget());
        order.record(elems.size() == checked_pow(p, n + m), where + ": order " + std::to_string(elems.size()));
        const Mat id = Mat::identity(f, g.n);
        bool exp_ok = true, central = true, nonabelian = false;
        for (const auto& x : elems) {
          exp_ok = exp_ok && mat_pow(x, p) == id;
          for (const auto& s : g.gens) {
            const Mat c = commutator(x, s);
            nonabelian = nonabelian || c != id;
            // [x, s] over all x and generators s normally generates [G, G]; central ones generate a central subgroup.
            for (const auto& t : g.gens) central = central && c * t == t * c;
          }
        }
        exponent.record(exp_ok, where + ": exponent");
        class2.record(central && nonabelian, where + ": class");
        if (n <= 3) {
          const BaerMap bm = baer_alt(g, default_budget());
          pseudo.record(decide_pseudo_isometry(a, bm.slices, default_budget()).has_value(), where + ": baer_alt not pseudo-isometric");
        }
      }
    }
  }
  for (u32 p : {5u, 7u}) {
    const Field f(p);
    Rng rng(seed_for(5, 99, p));
    for (int t = 0; t < exp_log_trials; ++t) {
      const Mat g = random_unitriangular(f, 1 + rng.below(4), rng);
      exp_log.record(matrix_exp(matrix_log(g)) == g, "p=" + std::to_string(p) + " trial " + std::to_string(t));
    }
  }
  log << "[5] baer_group order " << order.summary() << ", exponent " << exponent.summary() << ", class 2 "
      << class2.summary() << ", baer_alt pseudo-isometric " << pseudo.summary() << ", digest " << dg.hex() << "\n";
  log << "[5] matrix_exp(matrix_log(g)) == g " << exp_log.summary() << "\n";
  const bool pass = order.pass() && exponent.pass() && class2.pass() && pseudo.pass() && exp_log.pass();
  return {5, "Baer and Lazard correspondences", pass,
          "order " + order.summary() + ", exponent " + exponent.summary() + ", class " + class2.summary() +
              ", pseudo-isometry " + pseudo.summary() + ", exp/log " + exp_log.summary()};
}

// ---- 6: search to decision ----

CriterionResult search_to_decision(Level level, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const int iso_pairs = level == Level::Full ? 50 : 5, non_pairs = level == Level::Full ? 20 : 3;
  const u64 budget = default_budget();
  Tally found, refused, sides, guesses;
  Digest dg;
  u64 queries = 0;
  {
    const Field f(3);
    Rng rng(seed_for(6, 0, 0));
    for (int t = 0; t < iso_pairs; ++t) {
      const MatrixTuple a = independent_alternating(f, 4, 2, rng);
      MatrixTuple b;
      const Mat p = sample_gl(f, 4, rng);
      for (const auto& s : a) b.push_back(p.transpose() * s * p);
      b = mix(b, sample_gl(f, 2, rng));
      SearchStats st;
      const auto w = find_isometry(a, b, structural_oracle(budget), budget, &st);
      found.record(w && verify_witness(Problem::Isometry, space_tensor(f, 4, a), space_tensor(f, 4, b), *w),
                   "isometric pair " + std::to_string(t));
      sides.record(st.max_query_side <= 2 * 4 * 4 + 2 * 4, "query side " + std::to_string(st.max_query_side));
      for (std::size_t s = 0; s < st.guesses.size(); ++s) guesses.record(st.guesses[s] <= st.guess_bounds[s], "step guess count");
      queries += st.queries;
      if (w) dg.add(Object(*w));
    }
  }
  for (int t = 0; t < non_pairs; ++t) {
    const InstancePair pair = gen_pair(Problem::Isometry, {3, 2}, 2, seed_for(6, 1, t), false, budget);
    const MatrixTuple a = std::get<Tensor3>(pair.a).frontal(), b = std::get<Tensor3>(pair.b).frontal();
    const bool certified = !decide_isometry(a, b, budget).has_value();
    SearchStats st;
    const bool none = !find_isometry(a, b, structural_oracle(budget), budget, &st).has_value();
    refused.record(certified && none, "non-isometric pair " + std::to_string(t));
    sides.record(st.max_query_side <= 2 * 3 * 3 + 2 * 3, "query side " + std::to_string(st.max_query_side));
    queries += st.queries;
    dg.add(object_from_instance(Problem::Isometry, pair.a));
    dg.add(object_from_instance(Problem::Isometry, pair.b));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << "[6] isometric pairs n=4 m=2 p=3 found " << found.summary() << ", certified non-isometric pairs n=3 m=2 p=2 refused "
      << refused.summary() << ", query sides within 2n^2+2n " << sides.summary() << ", step guesses within bound "
      << guesses.summary() << ", oracle queries " << queries << ", digest " << dg.hex() << "\n";
  const bool in_time = seconds < 300.0;
  const bool pass = found.pass() && refused.pass() && sides.pass() && guesses.pass() && in_time;
  return {6, "search-to-decision", pass,
          "found " + found.summary() + ", refused " + refused.summary() + ", query sides " + sides.summary() +
              (in_time ? ", under 5 minutes" : ", over the 5 minute limit")};
}

CriterionResult run_one(int id, Level level, std::ostream& log) {
  switch (id) {
    case 1: return witness_round_trips(level, log);
    case 2: return exhaustive_soundness(level, log);
    case 3: return rank_profiles(level, log);
    case 4: return path_algebras(level, log);
    case 5: return baer_lazard(level, log);
    case 6: return search_to_decision(level, log);
  }
  fail(ErrorKind::Precondition, "no criterion " + std::to_string(id));
}

// Exceptions become a failed criterion so one defect cannot hide the rest of the report.
CriterionResult run_guarded(int id, Level level, std::ostream& log) {
  try {
    return run_one(id, level, log);
  } catch (const std::exception& e) {
    log << "[" << id << "] aborted: " << e.what() << "\n";
    return {id, "criterion " + std::to_string(id), false, std::string("aborted: ") + e.what()};
  }
}

std::string rerun_log(Level level) {
  std::ostringstream log;
  for (int id = 1; id <= 6; ++id) run_guarded(id, level, log);
  return log.str();
}

CriterionResult determinism(Level level, const std::string& first, const std::string& second, std::ostream& log) {
  Digest a, b;
  a.add(first);
  b.add(second);
  log << "[7] log digests " << a.hex() << " and " << b.hex() << "\n";
  const bool same = first == second && !first.empty();
  (void)level;
  return {7, "determinism", same,
          same ? "rerun of criteria 1-6 reproduced the " + std::to_string(first.size()) + "-byte log exactly"
               : "rerun of criteria 1-6 produced a different log"};
}

}  // namespace

Level level_from_name(const std::string& s) {
  if (s == "quick") return Level::Quick;
  if (s == "full") return Level::Full;
  fail(ErrorKind::Parse, "unknown level '" + s + "' (expected quick or full)");
}

const char* level_name(Level l) { return l == Level::Quick ? "quick" : "full"; }

CriterionResult run_criterion(int id, Level level, std::ostream& log) {
  require(id >= 1 && id <= kCriterionCount, ErrorKind::Precondition, "criteria are numbered 1 to 7");
  if (id == 7) return determinism(level, rerun_log(level), rerun_log(level), log);
  return run_guarded(id, level, log);
}

std::vector<CriterionResult> run_selftest(Level level, std::ostream& log,
                                          const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  std::ostringstream first;
  for (int id = 1; id <= 6; ++id) {
    std::ostringstream part;
    out.push_back(run_guarded(id, level, part));
    first << part.str();
    log << part.str();
    if (on_result) on_result(out.back());
  }
  out.push_back(determinism(level, first.str(), rerun_log(level), log));
  if (on_result) on_result(out.back());
  return out;
}

}  // namespace tik
