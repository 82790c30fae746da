#include "bockstein/lemmas.hpp"

#include <set>

namespace bockstein {

namespace {

std::vector<Vec> all_vectors(const Zpn& z, std::size_t len) {
  std::vector<Vec> out;
  Vec v(len, 0);
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < len && ++v[i] == z.modulus()) v[i++] = 0;
    if (i == len) return out;
  }
}

LemmaCheck make(std::string name, std::size_t k, std::size_t d, bool pass) {
  return {std::move(name), pass, "k=" + std::to_string(k) + (d ? " d=" + std::to_string(d) : "")};
}

}  // namespace

std::vector<LemmaCheck> ring_lemmas(const RingCtx& ctx, std::size_t max_rank, bool exhaustive) {
  std::vector<LemmaCheck> out;
  const GroupRingElt g1 = gamma_minus_one(ctx);
  const std::size_t q = ctx.order();
  std::vector<Vec> elements;
  if (exhaustive) elements = all_vectors(ctx.scalars(), q);

  for (std::size_t k = 1; k + 1 <= ctx.p(); ++k) {
    if (exhaustive) {
      std::set<Vec> ik, ik1;
      for (const auto& v : elements) {
        GroupRingElt x(ctx, v);
        ik.insert((g1.pow(k) * x).coeffs());
        ik1.insert((g1.pow(k + 1) * x).coeffs());
      }
      std::size_t expect = static_cast<std::size_t>(ctx.scalars().modulus());
      out.push_back(make("graded_piece", k, 0, ik.size() == expect * ik1.size()));
      bool rel = true;
      for (const auto& v : elements) {
        GroupRingElt x(ctx, v);
        rel = rel && g1 * derivative_op(ctx, k) * x == derivative_op(ctx, k - 1) * x;
      }
      out.push_back(make("der_relation", k, 0, rel));
    } else {
      int log = span_log_card(aug_ideal_power(ctx, k)) - span_log_card(aug_ideal_power(ctx, k + 1));
      out.push_back(make("graded_piece", k, 0, log == ctx.n()));
      out.push_back(make("der_relation", k, 0, g1 * derivative_op(ctx, k) == derivative_op(ctx, k - 1)));
    }

    for (std::size_t d = 1; d <= max_rank; ++d) {
      Mat dk1 = scalar_action(derivative_op(ctx, k - 1), d);
      Mat gk = scalar_action(g1.pow(k), d);
      if (exhaustive) {
        std::set<Vec> ker_g, ker_d, im_g, im_d;
        for (const auto& v : all_vectors(ctx.scalars(), d * q)) {
          Vec a = gk.apply(v), b = dk1.apply(v);
          if (is_zero(a)) ker_g.insert(v);
          if (is_zero(b)) ker_d.insert(v);
          im_g.insert(std::move(a));
          im_d.insert(std::move(b));
        }
        out.push_back(make("der_image", k, d, im_d == ker_g));
        out.push_back(make("der_kernel", k, d, im_g == ker_d));
      } else {
        out.push_back(make("der_image", k, d, howell_form(dk1) == kernel(gk)));
        out.push_back(make("der_kernel", k, d, howell_form(gk) == kernel(dk1)));
      }
    }
  }
  return out;
}

}  // namespace bockstein
