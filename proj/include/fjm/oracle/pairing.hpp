#pragma once

// Brute-force Fourier-Jacobi pairings over explicit groups, and the
// Jacobi-group descent on Sp_4(F_3): the subgroup R_l = H_l x| N_l with
// its representation nu_{l,psi} built from the Sp_2 Weil matrices and the
// Heisenberg model, validated by full closure over R_l.

#include "fjm/oracle/dltable.hpp"

namespace fjm::oracle {

// <pi (x) omega^dual, sigma> = (1/|G|) sum |class| pi conj(omega) conj(sigma),
// asserted to round to an integer within 1e-6.
long long pair_multiplicity_bruteforce(const ClassFunction& pi, const ClassFunction& sigma,
                                       const ClassFunction& omega);

// The descent machinery for G = Sp_4(F_3), built once per Oracle.
class JacobiDescent {
public:
    explicit JacobiDescent(Oracle& oracle);

    // l = 1: sigma is a class function on Sp_2(F_3).
    long long descend_l1(const ClassFunction& pi_on_sp4,
                         const ClassFunction& sigma_on_sp2) const;
    // l = 2 (Whittaker case; H_2 is trivial and sigma = 1).
    long long descend_l2(const ClassFunction& pi_on_sp4) const;

    const MatGroup& sp4() const { return *sp4_; }
    const MatGroup& sp2() const { return *sp2_; }
    long long r1_order() const { return (long long)r1_elements_.size(); }
    std::string note() const { return note_; }

private:
    std::shared_ptr<MatGroup> sp4_;
    std::shared_ptr<MatGroup> sp2_;
    // R_1 = Sp_2 x| N_1 inside Sp_4: element indices with precomputed data
    std::vector<int> r1_elements_;       // Sp_4 element indices
    std::vector<int> r1_h_class_;        // Sp_2 class of the Levi part
    std::vector<cplx> r1_nu_;            // nu_{1,psi} character value
    // N_2 (the full unipotent radical of the Borel) with the generic char
    std::vector<int> n2_elements_;
    std::vector<cplx> n2_psi_;
    std::string note_;
};

}  // namespace fjm::oracle
