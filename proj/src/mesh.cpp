#include "chernforge/mesh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chernforge {

double ChartDomain::volume() const {
  double v = 1.0;
  for (const auto& a : axes) v *= (a.hi - a.lo);
  return v;
}

bool ChartDomain::closed() const {
  for (const auto& a : axes)
    if (!a.periodic && !(a.lo_degenerate && a.hi_degenerate)) return false;
  return true;
}

void ChartDomain::validate() const {
  for (const auto& a : axes) {
    if (!(a.lo < a.hi)) throw std::invalid_argument("axis: requires lo < hi");
    if (a.res < 4) throw std::invalid_argument("axis: resolution must be >= 4");
  }
}

ChartDomain ChartDomain::box(std::vector<Axis> axes) {
  ChartDomain d{std::move(axes)};
  d.validate();
  return d;
}

ChartDomain ChartDomain::circle(int res) {
  return box({Axis{0.0, 2 * std::numbers::pi, res, true}});
}

ChartDomain ChartDomain::point() { return ChartDomain{}; }

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

std::vector<QuadraturePoint> quadrature_rule(const ChartDomain& domain) {
  domain.validate();
  const int d = domain.dim();
  std::vector<std::vector<double>> xs(d), ws(d);
  for (int i = 0; i < d; ++i) {
    const Axis& a = domain.axes[i];
    if (a.periodic) {
      const double h = (a.hi - a.lo) / a.res;
      xs[i].resize(a.res);
      ws[i].assign(a.res, h);
      for (int j = 0; j < a.res; ++j) xs[i][j] = a.lo + j * h;
    } else {
      gauss_legendre(a.res, a.lo, a.hi, xs[i], ws[i]);
    }
  }
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= xs[i].size();
  std::vector<QuadraturePoint> out;
  out.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t c = 0; c < total; ++c) {
    QuadraturePoint q;
    q.x.resize(d);
    q.w = 1.0;
    for (int i = 0; i < d; ++i) {
      q.x[i] = xs[i][idx[i]];
      q.w *= ws[i][idx[i]];
    }
    out.push_back(std::move(q));
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < xs[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

SmoothMap SmoothMap::identity(int dim) {
  SmoothMap m;
  m.source_dim = m.target_dim = dim;
  m.eval = [](const Coord& x) { return x; };
  m.jacobian = [dim](const Coord&) {
    return Eigen::MatrixXd::Identity(dim, dim);
  };
  return m;
}

SmoothMap SmoothMap::constant(int source_dim, Coord value) {
  SmoothMap m;
  m.source_dim = source_dim;
  m.target_dim = static_cast<int>(value.size());
  m.eval = [value](const Coord&) { return value; };
  m.jacobian = [td = m.target_dim, source_dim](const Coord&) {
    return Eigen::MatrixXd::Zero(td, source_dim);
  };
  return m;
}

SmoothMap SmoothMap::compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (inner.target_dim != outer.source_dim)
    throw std::invalid_argument("compose: dimension mismatch");
  SmoothMap m;
  m.source_dim = inner.source_dim;
  m.target_dim = outer.target_dim;
  m.eval = [o = outer.eval, i = inner.eval](const Coord& x) {
    return o(i(x));
  };
  if (outer.jacobian && inner.jacobian) {
    m.jacobian = [oj = outer.jacobian, ij = inner.jacobian,
                  ie = inner.eval](const Coord& x) -> Eigen::MatrixXd {
      return oj(ie(x)) * ij(x);
    };
  }
  return m;
}

Eigen::MatrixXd map_jacobian(const SmoothMap& map, const ChartDomain& source,
                             const Coord& y) {
  if (map.jacobian) return map.jacobian(y);
  const int sd = map.source_dim, td = map.target_dim;
  Eigen::MatrixXd J(td, sd);
  for (int i = 0; i < sd; ++i) {
    const Axis& a = source.axes[i];
    const double h = (a.hi - a.lo) / (8.0 * a.res);
    auto at = [&](double dx) {
      Coord p = y;
      p[i] += dx;
      return map.eval(p);
    };
    const Coord f1 = at(h), f_1 = at(-h), f2 = at(2 * h), f_2 = at(-2 * h);
    for (int r = 0; r < td; ++r)
      J(r, i) = (-f2[r] + 8 * f1[r] - 8 * f_1[r] + f_2[r]) / (12 * h);
  }
  return J;
}

FrameField FrameField::identity(long rank) {
  FrameField f;
  f.rank = rank;
  f.eval = [rank](const Coord&) -> Mat { return Mat::Identity(rank, rank); };
  // dimension of the 1-form value is unknown here; a zero analytic_d is
  // attached at use sites where the source dimension is known.
  return f;
}

int GeometricCycle::dimension() const {
  if (components.empty()) return -1;
  return components.front().source.dim();
}

GeometricCycle GeometricCycle::single(CycleComponent c) {
  GeometricCycle z;
  z.components.push_back(std::move(c));
  return z;
}

GeometricCycle boundary(const BoundedChain& chain) {
  const int d = chain.source.dim();
  bool any_free = false;
  for (const auto& a : chain.source.axes)
    if (!a.periodic) any_free = true;
  if (!any_free) throw std::invalid_argument("cycle has empty boundary");

  GeometricCycle out;
  for (int i = 0; i < d; ++i) {
    const Axis& a = chain.source.axes[i];
    if (a.periodic) continue;
    for (int end = 0; end < 2; ++end) {
      const double coord = end == 0 ? a.lo : a.hi;
      // outward-normal-first: +(-1)^i at the upper end, the opposite below
      const double sign = (end == 1 ? 1.0 : -1.0) * (i % 2 == 0 ? 1.0 : -1.0);
      CycleComponent c;
      for (int j = 0; j < d; ++j)
        if (j != i) c.source.axes.push_back(chain.source.axes[j]);
      SmoothMap facet;
      facet.source_dim = d - 1;
      facet.target_dim = d;
      facet.eval = [i, coord, d](const Coord& y) {
        Coord x(d);
        for (int j = 0, k = 0; j < d; ++j) x[j] = (j == i) ? coord : y[k++];
        return x;
      };
      facet.jacobian = [i, d](const Coord&) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d - 1);
        for (int j = 0, k = 0; j < d; ++j)
          if (j != i) J(j, k++) = 1.0;
        return J;
      };
      c.map = SmoothMap::compose(chain.map, facet);
      c.orientation = chain.orientation * sign;
      out.components.push_back(std::move(c));
    }
  }
  return out;
}

GeometricCycle reversed(GeometricCycle z) {
  for (auto& c : z.components) c.orientation = -c.orientation;
  return z;
}

GeometricCycle with_frame(GeometricCycle z, const FrameField& frame,
                          int gauge) {
  for (auto& c : z.components) {
    c.frame = frame;
    c.gauge = gauge;
  }
  return z;
}

ChartDomain product_with_circle(const ChartDomain& x, int fiber_res) {
  ChartDomain d;
  d.axes.push_back(Axis{0.0, 2 * std::numbers::pi, fiber_res, true});
  for (const auto& a : x.axes) d.axes.push_back(a);
  return d;
}

GeometricCycle product_with_circle(const GeometricCycle& z, int fiber_res,
                                   double fiber_orientation) {
  GeometricCycle out;
  for (const auto& comp : z.components) {
    CycleComponent c;
    c.source = product_with_circle(comp.source, fiber_res);
    SmoothMap m;
    m.source_dim = comp.source.dim() + 1;
    m.target_dim = comp.map.target_dim + 1;
    m.eval = [inner = comp.map.eval](const Coord& sy) {
      Coord y(sy.begin() + 1, sy.end());
      Coord fx = inner(y);
      Coord out_c(fx.size() + 1);
      out_c[0] = sy[0];
      for (std::size_t i = 0; i < fx.size(); ++i) out_c[i + 1] = fx[i];
      return out_c;
    };
    if (comp.map.jacobian) {
      m.jacobian = [ij = comp.map.jacobian, td = m.target_dim,
                    sd = m.source_dim](const Coord& sy) {
        Coord y(sy.begin() + 1, sy.end());
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(td, sd);
        J(0, 0) = 1.0;
        J.block(1, 1, td - 1, sd - 1) = ij(y);
        return J;
      };
    }
    c.map = std::move(m);
    c.orientation = fiber_orientation * comp.orientation;
    c.gauge = comp.gauge;
    out.components.push_back(std::move(c));
  }
  return out;
}

}  // namespace chernforge
