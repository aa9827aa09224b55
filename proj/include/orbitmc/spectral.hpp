#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

#include <vector>

namespace orbitmc {

/// Spectrum of a reversible kernel. `right_gap` is 1 - lambda_2 and
/// `abs_gap` is 1 - slem; the two are kept apart on purpose.
struct SpectralSummary {
  std::vector<double> eigenvalues;  // non-increasing
  double lambda2 = 0.0;
  double slem = 0.0;
  double right_gap = 1.0;
  double abs_gap = 1.0;
};

/// Eigenvalues of D^{1/2} P D^{-1/2}, D = diag(pi), via a symmetric solver.
/// A one-state chain has lambda_2 = slem = 0 by convention.
SpectralSummary spectrum_reversible(const Kernel& p);

/// Same, for a matrix that is reversible w.r.t. `pi` (no flag check).
SpectralSummary spectrum_reversible(const Mat& p, const Distribution& pi);

/// D^{1/2} A D^{-1/2} symmetrized as (S + S^T)/2.
Mat symmetrize(const Mat& a, const Distribution& pi);

/// Operator norm of A on l^2(pi): spectral norm of D^{1/2} A D^{-1/2}.
double pi_operator_norm(const Mat& a, const Distribution& pi);

enum class ThetaBranch { Top, Bottom };

struct ThetaConstant {
  double theta = 0.0;
  std::size_t achieving_orbit = 0;
  ThetaBranch achieving_branch = ThetaBranch::Top;
};

/// SLEM of the MH orbit kernel restricted to functions orthogonal to the
/// orbit-constant ones, from the per-orbit closed form.
ThetaConstant theta_mh(const OrbitPartition& part, const Distribution& pi);

/// SLEM of `k` on the pi-orthocomplement of orbit-constant functions,
/// computed by projecting the symmetrized matrix and calling the eigensolver.
double slem_on_orbit_complement(const Kernel& k, const OrbitPartition& part);

/// Eigenvalues of the independence MH sampler with uniform proposal on m
/// points whose target has the given masses (sorted non-increasing; they are
/// renormalized). Entry 0 is the eigenvalue 1.
std::vector<double> mh_independence_spectrum(const std::vector<double>& masses);

/// rho(P) (2 theta^k + theta^{2k}).
double slem_power_bound(double rho_p, double theta, unsigned k);

/// ceil(max{ln(4 rho/eps)/ln(1/theta), ln(2 rho/eps)/(2 ln(1/theta))}),
/// floored at 0.
long long approximation_time(double eps, double theta, double rho_p);

/// 2 <f, Z f>_pi - <f, f>_pi with Z = (I - P + Pi)^{-1}.
double asymptotic_variance(const Vec& f, const Kernel& p);

/// sup_h 4<f,h> - 2<(I-P)h,h> - <f,f> for reversible P, with the maximizer
/// found by a symmetric solve of the first-order condition.
double asymptotic_variance_variational(const Vec& f, const Kernel& p);

/// (1 + lambda_2) / (1 - lambda_2).
double worst_case_variance(const Kernel& p);

/// pi-weighted inner product.
double pi_inner(const Vec& f, const Vec& g, const Distribution& pi);

/// Subtracts the pi-mean.
Vec center(const Vec& f, const Distribution& pi);

}  // namespace orbitmc
