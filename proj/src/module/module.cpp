#include "bockstein/module.hpp"

namespace bockstein {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Module::Module(Mat gamma, const Mat& num, const Mat& den) : gamma_(std::move(gamma)) {
  require(gamma_.rows() == gamma_.cols(), "Module: gamma must be square");
  require(num.cols() == ambient() && den.cols() == ambient(), "Module: ambient mismatch");
  den_ = howell_form(den);
  num_ = howell_form(vstack(num, den_));
  require(span_contains(den_, den_ * gamma_), "Module: relations not stable under gamma");
  require(span_contains(num_, num_ * gamma_), "Module: generators not stable under gamma");
}

Module Module::free(const RingCtx& ctx, std::size_t rank) {
  const std::size_t m = rank * ctx.order();
  return {gamma_action(ctx, rank), Mat::identity(ctx.scalars(), m), Mat(ctx.scalars(), 0, m)};
}

Module Module::trivial(const Mat& num, const Mat& den) {
  return {Mat::identity(num.ring(), num.cols()), num, den};
}

Module Module::zero(const Zpn& ring, std::size_t ambient) {
  return {Mat::identity(ring, ambient), Mat(ring, 0, ambient), Mat(ring, 0, ambient)};
}

Mat Module::act(const GroupRingElt& x) const {
  Mat out(scalars(), ambient(), ambient());
  Mat power = Mat::identity(scalars(), ambient());
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    if (x.coeff(i) != 0) out = out + power.scaled(x.coeff(i));
    power = power * gamma_;
  }
  return out;
}

Mat Module::filtration_operator(Filtration f) const {
  Mat id = Mat::identity(scalars(), ambient());
  if (f == Filtration::Augmentation) return gamma_ - id;
  return id.scaled(scalars().p() % scalars().modulus());
}

Mat Module::closure(const Mat& gens) const {
  Mat cur = howell_form(gens);
  for (;;) {
    Mat next = howell_form(vstack(cur, cur * gamma_));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Module Module::submodule(const Mat& gens) const { return {gamma_, closure(gens), den_}; }

Module Module::quotient(const Mat& gens) const { return {gamma_, num_, vstack(den_, closure(gens))}; }

Module intersect(const Module& a, const Module& b) {
  require(a.ambient() == b.ambient() && a.den() == b.den(), "intersect: modules are not in a common quotient");
  return a.with_num(span_intersect(a.num(), b.num()));
}

Module filtration_submodule(const Module& m, Filtration f, std::size_t power) {
  Mat op = m.filtration_operator(f).power(power);
  return m.with_num(vstack(m.num() * op, m.den()));
}

Module kernel_of(const Module& m, const Mat& op) { return m.with_num(span_preimage(m.num(), op, m.den())); }

Module fixed_points(const Module& m) {
  return kernel_of(m, m.filtration_operator(Filtration::Augmentation));
}

Module filtration_piece(const RingCtx& ctx, const Module& m, std::size_t k) {
  if (k < 1 || k >= ctx.p()) throw std::out_of_range("filtration_piece: k must lie in [1, p-1]");
  return intersect(fixed_points(m), filtration_submodule(m, Filtration::Augmentation, k - 1));
}

ModuleHom::ModuleHom(Module source, Module target, Mat images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  require(images_.rows() == source_.num().rows() && images_.cols() == target_.ambient(),
          "ModuleHom: image matrix has the wrong shape");
  coords_ = std::make_shared<const Solver>(source_.num());
  for (std::size_t i = 0; i < images_.rows(); ++i)
    require(target_.contains(images_.row(i)), "ModuleHom: image outside the target");
  // relations among the generators, and the source relations, must land in the target relations
  const Mat& syz = coords_->kernel();
  for (std::size_t i = 0; i < syz.rows(); ++i)
    require(target_.is_zero_class(images_.apply(syz.row(i))), "ModuleHom: not well defined");
  for (std::size_t i = 0; i < source_.den().rows(); ++i)
    require(target_.is_zero_class(lift(source_.den().row(i))), "ModuleHom: not well defined on relations");
  for (std::size_t i = 0; i < images_.rows(); ++i) {
    Vec moved = source_.gamma().apply(source_.num().row(i));
    Vec lhs = lift(moved);
    Vec rhs = target_.gamma().apply(images_.row(i));
    require(target_.is_zero_class(vec_sub(target_.scalars(), lhs, rhs)), "ModuleHom: does not commute with gamma");
  }
}

ModuleHom ModuleHom::from_ambient(Module source, Module target, const Mat& f) {
  Mat images = source.num() * f;
  return {std::move(source), std::move(target), std::move(images)};
}

Vec ModuleHom::lift(std::span<const Residue> v) const {
  auto c = coords_->solve(v);
  if (!c) throw std::invalid_argument("ModuleHom: vector outside the source");
  return images_.apply(*c);
}

Vec ModuleHom::apply(std::span<const Residue> v) const { return target_.canonical(lift(v)); }

Module ModuleHom::kernel() const {
  const Mat id = Mat::identity(source_.scalars(), images_.rows());
  Mat coeffs = span_preimage(id, images_, target_.den());
  return source_.with_num(coeffs * source_.num());
}

Module ModuleHom::image() const { return target_.with_num(images_); }

ModuleHom ModuleHom::then(const ModuleHom& next) const {
  Mat out(target_.scalars(), images_.rows(), next.target().ambient());
  for (std::size_t i = 0; i < images_.rows(); ++i) {
    Vec v = next.lift(images_.row(i));
    std::copy(v.begin(), v.end(), out.row(i).begin());
  }
  return {source_, next.target(), std::move(out)};
}

bool ModuleHom::operator==(const ModuleHom& o) const {
  if (!(source_ == o.source_ && target_ == o.target_)) return false;
  for (std::size_t i = 0; i < images_.rows(); ++i)
    if (!target_.is_zero_class(vec_sub(target_.scalars(), images_.row(i), o.images_.row(i)))) return false;
  return true;
}

}  // namespace bockstein
