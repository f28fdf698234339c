#pragma once

// Hofstadter model on the 2d/3d torus with uniform flux Phi = 2 pi m / n
// per plaquette (isotropic B = Phi (1,1,1) in 3d).
//
// Directions are 0-based here: direction j carries momentum k_{j+1} and twist
// theta_{j+1}.

#include <array>
#include <iosfwd>
#include <vector>

#include "giv/eigensolver.hpp"
#include "giv/lattice.hpp"
#include "giv/transform.hpp"

namespace giv {

struct HofstadterParams {
    int dim = 2;      // spatial dimension, 2 or 3
    int m = 1;
    int n = 2;
    int kappa = 1;
    double t = 1.0;
    std::array<double, 3> theta{};

    void validate() const;
    double flux() const;
    // kappa n (asymmetric), 2 kappa n (2d symmetric), 3 kappa n (3d symmetric).
    int lattice_size(Construction c) const;
    Geometry geometry(Construction c) const;
};

// phi = 0, uniform-field strips and loops. The links it reconstructs carry
// flux Phi mod 2 pi through every plaquette (F_10 = Phi; F_21 = Phi and
// F_20 = -Phi in 3d).
GaugeInvariantRep uniform_field_giv(const HofstadterParams& p, Construction c);

// H[r + j, r] = -t exp(i A_j(r)) plus the conjugate entry. Periodic lattices
// with at most 4096 sites.
HermitianMatrix real_space_hamiltonian(const LinkField& links, double t);

// U H U^dagger with U = diag(exp(-i phi)).
HermitianMatrix phase_rotate_basis(const HermitianMatrix& h, const VertexField& phi);

// Bands per momentum: n, (2n)^2, n^2, (3n)^3.
int band_count(const HofstadterParams& p, Construction c);

// Width divisor w of the magnetic zone per direction: k_i in [-pi/w, pi/w).
std::array<int, 3> mbz_divisors(const HofstadterParams& p, Construction c);

HermitianMatrix band_matrix(const HofstadterParams& p, Construction c, const std::array<double, 3>& k);

// Lattice momenta k_i = (2 pi j - theta_i) / N inside the magnetic zone, in
// lexicographic order of (k_1, k_2, k_3).
std::vector<std::array<double, 3>> mbz_grid(const HofstadterParams& p, Construction c);

struct SpectrumEntry {
    std::array<double, 3> k;
    int band;
    double energy;
};

struct Spectrum {
    int dim = 2;
    std::vector<SpectrumEntry> entries;  // sorted by energy

    std::vector<double> energies() const;
};

Spectrum spectrum(const HofstadterParams& p, Construction c);
// Sorted eigenvalues of the real-space Hamiltonian built from `links`.
std::vector<double> real_space_spectrum(const LinkField& links, double t);

struct CoincidenceReport {
    std::size_t size = 0;
    double max_abs_diff = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool size_mismatch = false;
};

CoincidenceReport spectra_coincide(std::vector<double> a, std::vector<double> b, double tol);

// Header k1,k2[,k3],band,energy; 17 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

struct ButterflyRow {
    int m;
    int n;
    double energy;
};

// 2d asymmetric spectra at kappa = 1 for all coprime 1 <= m < n <= n_max;
// n_max = 1 gives the zero-flux point (0, 1).
std::vector<ButterflyRow> butterfly(int n_max, double t);
void write_butterfly_csv(std::ostream& out, const std::vector<ButterflyRow>& rows);

}  // namespace giv
