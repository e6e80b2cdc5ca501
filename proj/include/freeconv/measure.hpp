#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "freeconv/errors.hpp"

namespace freeconv {

enum class Domain { real, halfline, circle };

const char* domain_name(Domain d);

struct Atom {
  double position;  // point on the line/half-line, or angle in [0,2pi)
  double mass;      // in (0,1]
};

struct QuadNode {
  double position;
  double weight;  // > 0
};

/// Immutable probability measure: a finite atom list plus a weighted
/// quadrature discretization of the continuous part.  Total mass 1.
class Measure {
 public:
  Measure(Domain domain, std::vector<Atom> atoms, std::vector<QuadNode> nodes);

  Domain domain() const { return domain_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<QuadNode>& continuous() const { return nodes_; }

  bool is_point_mass() const {
    return nodes_.empty() && atoms_.size() == 1;
  }
  bool is_atomic() const { return nodes_.empty(); }
  double atom_mass_at(double position, double tol = 1e-12) const;
  double total_mass() const;

  /// First moment: sum of m*x (line) or m*e^{i theta} as a complex (circle).
  std::complex<double> first_moment() const;

 private:
  Domain domain_;
  std::vector<Atom> atoms_;
  std::vector<QuadNode> nodes_;
};

struct Semicircle { double center; double radius; };
struct Arcsine { double a; double b; };
struct UniformInterval { double a; double b; };
struct HaarCircle {};
struct PointMass { double position; };

using NamedFamily =
    std::variant<Semicircle, Arcsine, UniformInterval, HaarCircle, PointMass>;

Measure make_atomic(const std::vector<Atom>& atoms, Domain domain);

Measure make_named(const NamedFamily& family, Domain domain,
                   int node_count = 512);

Measure pushforward_affine(const Measure& mu, double scale, double shift);

}  // namespace freeconv
