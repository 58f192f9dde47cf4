#include "prokit/category.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "prokit/error.hpp"

namespace prokit {

namespace {

// Keeps dim * m^2 well inside int64 for the dimensions we ever build.
constexpr std::int64_t kMaxModulus = std::int64_t{1} << 24;

}  // namespace

std::string to_string(Backend b) { return b == Backend::FinSet ? "finset" : "matmod"; }

Obj Obj::finset(std::vector<std::int64_t> labels) {
  std::unordered_set<std::int64_t> seen;
  for (auto l : labels)
    if (!seen.insert(l).second) throw PreconditionError("duplicate point label " + std::to_string(l));
  Obj x;
  x.backend_ = Backend::FinSet;
  x.labels_ = std::make_shared<const std::vector<std::int64_t>>(std::move(labels));
  return x;
}

Obj Obj::finset_of_size(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
  return finset(std::move(labels));
}

Obj Obj::matmod(int dim, std::int64_t modulus) {
  if (dim < 0) throw PreconditionError("matmod dimension must be >= 0");
  if (modulus < 2 || modulus > kMaxModulus) throw PreconditionError("matmod modulus out of range");
  Obj x;
  x.backend_ = Backend::MatMod;
  x.dim_ = dim;
  x.modulus_ = modulus;
  return x;
}

std::size_t Obj::size() const noexcept {
  return backend_ == Backend::FinSet ? labels_->size() : static_cast<std::size_t>(dim_);
}

const std::vector<std::int64_t>& Obj::labels() const {
  if (backend_ != Backend::FinSet) throw PreconditionError("labels() on a matmod object");
  return *labels_;
}

bool operator==(const Obj& x, const Obj& y) {
  if (x.backend_ != y.backend_) return false;
  if (x.backend_ == Backend::MatMod) return x.dim_ == y.dim_ && x.modulus_ == y.modulus_;
  return x.labels_ == y.labels_ || *x.labels_ == *y.labels_;
}

std::string describe(const Obj& x) {
  std::ostringstream os;
  if (x.backend() == Backend::MatMod) {
    os << "Z/" << x.modulus() << "^" << x.dim();
    return os.str();
  }
  os << "{";
  for (std::size_t i = 0; i < x.labels().size(); ++i) os << (i ? "," : "") << x.labels()[i];
  os << "}";
  return os.str();
}

Mor Mor::finset_map(Obj dom, Obj cod, std::vector<std::uint32_t> image) {
  if (dom.backend() != Backend::FinSet || cod.backend() != Backend::FinSet)
    throw CompositionError("finset_map needs finset objects");
  if (image.size() != dom.size()) throw CompositionError("map is not total on its domain");
  for (auto v : image)
    if (v >= cod.size()) throw CompositionError("map leaves its codomain");
  return Mor(std::make_shared<const Payload>(Payload{std::move(dom), std::move(cod), std::move(image), {}}));
}

Mor Mor::matrix(Obj dom, Obj cod, const Residues& m) {
  if (dom.backend() != Backend::MatMod || cod.backend() != Backend::MatMod)
    throw CompositionError("matrix needs matmod objects");
  if (dom.modulus() != cod.modulus()) throw CompositionError("moduli differ");
  if (m.rows() != cod.dim() || m.cols() != dom.dim()) throw CompositionError("matrix shape does not match dom/cod");
  const auto mod = dom.modulus();
  Residues reduced = m.unaryExpr([mod](std::int64_t v) { return reduce_mod(v, mod); });
  return Mor(std::make_shared<const Payload>(Payload{std::move(dom), std::move(cod), {}, std::move(reduced)}));
}

std::string describe(const Mor& f) {
  std::ostringstream os;
  os << describe(f.dom()) << " -> " << describe(f.cod()) << " ";
  if (f.backend() == Backend::FinSet) {
    os << "[";
    for (std::size_t i = 0; i < f.image().size(); ++i) os << (i ? "," : "") << f.cod().labels()[f.image()[i]];
    os << "]";
  } else {
    os << "[";
    for (Eigen::Index r = 0; r < f.entries().rows(); ++r) {
      os << (r ? ";" : "");
      for (Eigen::Index c = 0; c < f.entries().cols(); ++c) os << (c ? " " : "") << f.entries()(r, c);
    }
    os << "]";
  }
  return os.str();
}

Mor identity(const Obj& x) {
  if (x.backend() == Backend::FinSet) {
    std::vector<std::uint32_t> image(x.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<std::uint32_t>(i);
    return Mor::finset_map(x, x, std::move(image));
  }
  return Mor::matrix(x, x, Residues::Identity(x.dim(), x.dim()));
}

Mor compose(const Mor& g, const Mor& f) {
  if (!(f.cod() == g.dom()))
    throw CompositionError("cannot compose: cod " + describe(f.cod()) + " != dom " + describe(g.dom()));
  if (f.backend() == Backend::FinSet) {
    std::vector<std::uint32_t> image(f.image().size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = g.image()[f.image()[i]];
    return Mor::finset_map(f.dom(), g.cod(), std::move(image));
  }
  return Mor::matrix(f.dom(), g.cod(), mul_mod<std::int64_t>(g.entries(), f.entries(), f.dom().modulus()));
}

bool mor_eq(const Mor& f, const Mor& g) {
  if (f.payload_ == g.payload_) return true;
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) return false;
  if (f.backend() == Backend::FinSet) return std::ranges::equal(f.image(), g.image());
  return f.entries() == g.entries();
}

bool composite_equals(const Mor& g, const Mor& f, const Mor& h) {
  if (!(f.cod() == g.dom()))
    throw CompositionError("cannot compose: cod " + describe(f.cod()) + " != dom " + describe(g.dom()));
  if (!(f.dom() == h.dom()) || !(g.cod() == h.cod())) return false;
  if (f.backend() == Backend::FinSet) {
    const auto fi = f.image();
    const auto gi = g.image();
    const auto hi = h.image();
    for (std::size_t i = 0; i < fi.size(); ++i)
      if (gi[fi[i]] != hi[i]) return false;
    return true;
  }
  return mul_mod<std::int64_t>(g.entries(), f.entries(), f.dom().modulus()) == h.entries();
}

}  // namespace prokit
