#include <algorithm>
#include <cmath>

#include "bockstein/pairing.hpp"

namespace bockstein {

namespace {

std::vector<Vec> rows_of(const Mat& m) {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row_vec(r));
  return out;
}

Vec random_combination(SplitMix64& rng, const Mat& gens) {
  const Zpn& z = gens.ring();
  Vec v(gens.cols(), 0);
  for (std::size_t r = 0; r < gens.rows(); ++r) v = vec_add(z, v, vec_scale(z, rng.below(z.modulus()), gens.row(r)));
  return v;
}

GradedClass add(const RingCtx& ctx, const GradedClass& a, const GradedClass& b) {
  return graded_class(ctx, a.k, a.representative + b.representative);
}

// Generator sums in each slot, through the derivative-operator pairing.
bool check_bilinear(const RingCtx& ctx, const BdPairing& bd, const std::vector<Vec>& sg, const std::vector<Vec>& tg) {
  const Zpn& z = ctx.scalars();
  for (std::size_t i = 0; i < sg.size(); ++i)
    for (std::size_t j = 0; j < tg.size(); ++j) {
      const Vec& s1 = sg[i];
      const Vec& s2 = sg[(i + 1) % sg.size()];
      const Vec& t1 = tg[j];
      const Vec& t2 = tg[(j + 1) % tg.size()];
      if (!(bd(vec_add(z, s1, s2), t1).value == add(ctx, bd(s1, t1).value, bd(s2, t1).value))) return false;
      if (!(bd(s1, vec_add(z, t1, t2)).value == add(ctx, bd(s1, t1).value, bd(s1, t2).value))) return false;
    }
  return true;
}

}  // namespace

CompareReport compare(const PairingData& data, std::size_t kmax, const CompareOptions& opts) {
  CompareReport rep;
  const RingCtx& ctx = data.ctx();
  const std::size_t top = std::min<std::size_t>(kmax, ctx.p() - 1);
  PairingData dual = data.dual();
  for (std::size_t k = 1; k <= top; ++k) {
    Module sp = data.s_piece(k);
    Module tp = data.t_piece(k);
    if (sp.is_zero() || tp.is_zero()) continue;

    SplitMix64 rng(trial_seed(opts.seed, "pairing", k));
    std::int64_t u = 1;
    do u = static_cast<std::int64_t>(1 + rng.below(ctx.order() - 1));
    while (static_cast<std::uint64_t>(u) % ctx.p() == 0);

    BdPairing bd(data, k);
    BdPairing fresh(data, k, &rng, u);
    BdPairing sym(dual, k, &rng);
    BocPairing boc(data, k);

    std::vector<Vec> sg = rows_of(sp.num()), tg = rows_of(tp.num());
    std::vector<Vec> ss, ts;
    double size = std::pow(static_cast<double>(ctx.p()), sp.log_card() + tp.log_card());
    if (size <= static_cast<double>(opts.max_card)) {
      ss = enumerate_span(sp.num(), opts.max_card);
      ts = enumerate_span(tp.num(), opts.max_card);
    } else {
      rep.exhaustive = false;
      ss = sg;
      ts = tg;
      for (std::size_t r = 0; r < opts.random_pairs; ++r) {
        ss.push_back(random_combination(rng, sp.num()));
        ts.push_back(random_combination(rng, tp.num()));
      }
    }

    struct SLift {
      Vec x, x_fresh, w, x_sym;
    };
    struct TLift {
      Vec y, y_fresh, y_norm, y_sym;
    };
    std::vector<SLift> sl;
    for (const auto& s : ss) sl.push_back({bd.lift_s(s), fresh.lift_s(s), boc.bockstein_class(s), sym.lift_t(s)});
    std::vector<TLift> tl;
    for (const auto& t : ts) tl.push_back({bd.lift_t(t), fresh.lift_t(t), boc.norm_lift(t), sym.lift_s(t)});

    auto evaluate = [&](const SLift& a, const TLift& b, PairingRecord& rec) {
      rec.k = k;
      rec.bd = bd.value(a.x, b.y);
      rec.boc = boc.value(a.w, b.y_norm);
      rec.equal = rec.bd == rec.boc;
      rec.symmetric = rec.bd == sym.value(b.y_sym, a.x_sym);
      rec.stable = rec.bd == fresh.value(a.x_fresh, b.y_fresh);
      ++rep.evaluations;
      rep.equal += rec.equal;
      rep.symmetric += rec.symmetric;
      rep.stable += rec.stable;
    };
    for (const auto& a : sl)
      for (const auto& b : tl) {
        PairingRecord rec;
        evaluate(a, b, rec);
      }
    for (const auto& s : sg)
      for (const auto& t : tg) {
        PairingRecord rec;
        rec.s = s;
        rec.t = t;
        evaluate({bd.lift_s(s), fresh.lift_s(s), boc.bockstein_class(s), sym.lift_t(s)},
                 {bd.lift_t(t), fresh.lift_t(t), boc.norm_lift(t), sym.lift_s(t)}, rec);
        rep.records.push_back(std::move(rec));
      }
    rep.bilinear = rep.bilinear && check_bilinear(ctx, bd, sg, tg);
  }
  return rep;
}

}  // namespace bockstein
