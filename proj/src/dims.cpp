#include "entloc/dims.hpp"

#include <limits>

#include "entloc/error.hpp"

namespace entloc {

SubsystemDims::SubsystemDims(std::vector<int> dims, std::size_t cap) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error("subsystem dims must list at least one subsystem");
  for (int d : dims_) {
    if (d < 2) throw Error("local dimension " + std::to_string(d) + " is below 2");
    if (total_ > cap / static_cast<std::size_t>(d))
      throw Error("total Hilbert dimension of " + to_string() + " exceeds the cap of " +
                  std::to_string(cap));
    total_ *= static_cast<std::size_t>(d);
  }
}

std::size_t SubsystemDims::total_of(const IndexBlock& block) const {
  std::size_t t = 1;
  for (int i : block) {
    if (i > count()) throw Error("subsystem " + std::to_string(i) + " outside dims " + to_string());
    t *= static_cast<std::size_t>(local(i));
  }
  return t;
}

SubsystemDims SubsystemDims::restrict_to(const IndexBlock& block) const {
  std::vector<int> out;
  for (int i : block) {
    if (i > count()) throw Error("subsystem " + std::to_string(i) + " outside dims " + to_string());
    out.push_back(local(i));
  }
  return SubsystemDims(std::move(out), std::numeric_limits<std::size_t>::max());
}

SubsystemDims SubsystemDims::concat(const SubsystemDims& other) const {
  auto out = dims_;
  out.insert(out.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemDims(std::move(out));
}

std::string SubsystemDims::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < dims_.size(); ++i) out += (i ? "," : "") + std::to_string(dims_[i]);
  return out + ")";
}

std::vector<std::size_t> group_offsets(const std::vector<int>& dims,
                                       const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t j = dims.size(); j-- > 1;) stride[j - 1] = stride[j] * static_cast<std::size_t>(dims[j]);

  std::vector<std::size_t> offsets{0};
  for (std::size_t p : positions) {
    const auto k = static_cast<std::size_t>(dims.at(p));
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * k);
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < k; ++digit) next.push_back(base + digit * stride[p]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace entloc
