#include "bmhd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace bmhd {
namespace {

struct PlanKey {
  int dim, n, sign;
  bool operator<(const PlanKey& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (n != o.n) return n < o.n;
    return sign < o.sign;
  }
};

std::mutex plan_mutex;
std::map<PlanKey, fftw_plan> plan_cache;

// Plans are created once per shape on scratch buffers with FFTW_UNALIGNED so
// they may later run on any caller-owned storage via fftw_execute_dft.
fftw_plan get_plan(const Grid& g, int sign) {
  const PlanKey key{g.dim, g.n, sign};
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;

  std::vector<cplx> in(g.points()), out(g.points());
  int dims[3] = {g.n, g.n, g.n};
  fftw_plan p = fftw_plan_dft(
      g.dim, dims, reinterpret_cast<fftw_complex*>(in.data()),
      reinterpret_cast<fftw_complex*>(out.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("failed to create transform plan");
  plan_cache.emplace(key, p);
  return p;
}

void execute(const Grid& g, int sign, const std::vector<cplx>& in,
             std::vector<cplx>& out) {
  fftw_plan p = get_plan(g, sign);
  out.resize(in.size());
  // new-array execute; in is not modified for out-of-place c2c
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void spectral_to_physical(const Grid& g, const std::vector<cplx>& coeffs,
                          std::vector<cplx>& values) {
  // exp(+ik.x) synthesis = FFTW backward
  execute(g, FFTW_BACKWARD, coeffs, values);
}

void physical_to_spectral(const Grid& g, const std::vector<cplx>& values,
                          std::vector<cplx>& coeffs) {
  execute(g, FFTW_FORWARD, values, coeffs);
  const double inv = 1.0 / static_cast<double>(g.points());
  for (auto& c : coeffs) c *= inv;
}

std::vector<double> to_physical(const ScalarField& f) {
  std::vector<cplx> vals;
  spectral_to_physical(f.grid, f.c, vals);
  std::vector<double> re(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) re[i] = vals[i].real();
  return re;
}

ScalarField field_from_physical(const Grid& g, const std::vector<double>& values) {
  if (values.size() != g.points())
    throw std::invalid_argument("sample array size does not match grid");
  std::vector<cplx> vals(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) vals[i] = values[i];
  std::vector<cplx> coeffs;
  physical_to_spectral(g, vals, coeffs);
  ScalarField f(g, std::move(coeffs));
  symmetrize(f);
  return f;
}

}  // namespace bmhd
