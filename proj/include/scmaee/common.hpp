#ifndef SCMAEE_COMMON_HPP
#define SCMAEE_COMMON_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scmaee {

// Dense row-major tensor with runtime extents. All model/allocation state
// lives in these; indices are asserted in debug builds only.
template <int Rank>
class Grid {
 public:
  Grid() { dims_.fill(0); }

  template <typename... Dims>
  explicit Grid(Dims... dims) : dims_{static_cast<int>(dims)...} {
    static_assert(sizeof...(Dims) == Rank, "rank mismatch");
    std::size_t n = 1;
    for (int d : dims_) {
      if (d < 0) throw std::invalid_argument("Grid: negative extent");
      n *= static_cast<std::size_t>(d);
    }
    v_.assign(n, 0.0);
  }

  template <typename... Ix>
  double& operator()(Ix... ix) {
    return v_[flat(ix...)];
  }
  template <typename... Ix>
  double operator()(Ix... ix) const {
    return v_[flat(ix...)];
  }

  int extent(int axis) const { return dims_[axis]; }
  std::size_t size() const { return v_.size(); }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  void fill(double x) { v_.assign(v_.size(), x); }

  bool operator==(const Grid& o) const { return dims_ == o.dims_ && v_ == o.v_; }

 private:
  template <typename... Ix>
  std::size_t flat(Ix... ix) const {
    static_assert(sizeof...(Ix) == Rank, "rank mismatch");
    const std::array<int, Rank> idx{static_cast<int>(ix)...};
    std::size_t f = 0;
    for (int a = 0; a < Rank; ++a) f = f * static_cast<std::size_t>(dims_[a]) + static_cast<std::size_t>(idx[a]);
    return f;
  }

  std::array<int, Rank> dims_;
  std::vector<double> v_;
};

using Grid2 = Grid<2>;
using Grid3 = Grid<3>;
using Grid4 = Grid<4>;

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double log2_1p(double x) { return std::log2(1.0 + x); }

// Thrown when an input fails a documented precondition; the message names
// the offending field.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace scmaee

#endif  // SCMAEE_COMMON_HPP
