#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "billiards/reflect/frames.hpp"

namespace billiards {

/// A billiard table: a hypersurface that can frame its points and intersect
/// rays.
class Boundary {
 public:
  virtual ~Boundary() = default;
  virtual int dim() const = 0;
  virtual bool contains(const Eigen::VectorXd& p, double eps) const = 0;
  /// Frame data at a boundary point (throws geometry_error off the boundary).
  virtual FramedPoint frame_at(const Eigen::VectorXd& p) const = 0;
  /// First intersection of the open ray {p + s v : s > 0} with the boundary,
  /// excluding the base point itself. Throws geometry_error when the ray
  /// never returns.
  virtual Eigen::VectorXd next_intersection(const Eigen::VectorXd& p,
                                            const Eigen::VectorXd& v) const = 0;
};

/// The quadric sum_j x_j^2 / a_j = 1 in dimension a.size(), carrying a frame
/// rule. Ray intersection is closed-form.
class QuadricBoundary : public Boundary {
 public:
  QuadricBoundary(std::vector<double> semiaxes_sq, FrameRule rule);

  int dim() const override;
  bool contains(const Eigen::VectorXd& p, double eps) const override;
  FramedPoint frame_at(const Eigen::VectorXd& p) const override;
  Eigen::VectorXd next_intersection(const Eigen::VectorXd& p,
                                    const Eigen::VectorXd& v) const override;

  /// Gradient 2 x_j / a_j of the implicit equation.
  Eigen::VectorXd gradient(const Eigen::VectorXd& p) const;
  /// Boundary point at an angle (d = 2).
  Eigen::VectorXd point_at(double theta) const;
  /// Boundary point at longitude/latitude angles (d = 3).
  Eigen::VectorXd point_at(double theta, double phi) const;
  const std::vector<double>& semiaxes_sq() const { return a_; }

 private:
  std::vector<double> a_;
  FrameRule rule_;
};

/// A closed polygon (d = 2) whose edges carry individual frame rules. Edge j
/// joins vertex j to vertex j+1 (cyclically). Orbits hitting a vertex are
/// rejected with degenerate_error.
class PolygonBoundary : public Boundary {
 public:
  PolygonBoundary(std::vector<Eigen::Vector2d> vertices, std::vector<FrameRule> edge_rules);
  static PolygonBoundary with_uniform_rule(std::vector<Eigen::Vector2d> vertices,
                                           const FrameRule& rule);

  int dim() const override { return 2; }
  bool contains(const Eigen::VectorXd& p, double eps) const override;
  FramedPoint frame_at(const Eigen::VectorXd& p) const override;
  Eigen::VectorXd next_intersection(const Eigen::VectorXd& p,
                                    const Eigen::VectorXd& v) const override;

  std::size_t size() const { return verts_.size(); }
  const Eigen::Vector2d& vertex(std::size_t j) const { return verts_[j % verts_.size()]; }
  /// Index of the edge containing p (throws geometry_error when none is
  /// within eps).
  std::size_t edge_index_of(const Eigen::VectorXd& p, double eps = 1e-8) const;

 private:
  std::vector<Eigen::Vector2d> verts_;
  std::vector<FrameRule> rules_;
};

/// A smooth closed curve given by a 2*pi-periodic chart and its derivative;
/// ray intersections and point location run multi-seed Newton iterations.
class ChartBoundary : public Boundary {
 public:
  using Chart = std::function<Eigen::Vector2d(double)>;
  ChartBoundary(Chart gamma, Chart dgamma, FrameRule rule, int seeds = 64);

  int dim() const override { return 2; }
  bool contains(const Eigen::VectorXd& p, double eps) const override;
  FramedPoint frame_at(const Eigen::VectorXd& p) const override;
  Eigen::VectorXd next_intersection(const Eigen::VectorXd& p,
                                    const Eigen::VectorXd& v) const override;

  /// Chart parameter of (the closest curve point to) p; throws geometry_error
  /// when p is not on the curve.
  double parameter_of(const Eigen::VectorXd& p) const;
  Eigen::Vector2d at(double u) const { return gamma_(u); }

 private:
  Chart gamma_;
  Chart dgamma_;
  FrameRule rule_;
  int seeds_;
};

}  // namespace billiards
