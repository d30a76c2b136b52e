#pragma once

#include <functional>
#include <vector>

namespace freelevy {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre on [-1, 1].
QuadRule gauss_legendre(int n);

// n-point Gauss-Jacobi on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
QuadRule gauss_jacobi(int n, double a, double b);

// Composite Gauss-Legendre over [lo, hi] split into `panels` equal pieces.
double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int panels = 16,
                    int order = 20);

// Trapezoid rule over a strictly increasing grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace freelevy
