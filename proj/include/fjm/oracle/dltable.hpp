#pragma once

// Ground-truth realizations of the supported small groups: explicit
// matrices, concrete maximal tori aligned with the engine's torus
// catalog, Weil characters, and full Deligne-Lusztig character tables
// (virtual class functions), runtime-validated against orthogonality,
// degree, and torus-restriction laws.

#include <map>

#include "fjm/oracle/weilrep.hpp"
#include "fjm/torus.hpp"

namespace fjm::oracle {

struct TorusRealization {
    TorusDatum datum;
    std::vector<long long> moduli;
    // all |T^F| points: residue tuples and their group element indices
    std::vector<std::vector<long long>> residues;
    std::vector<int> element_index;
    bool dl_covered = true;  // false: needs Green functions we do not ship
};

struct OracleGroup {
    GroupSpec spec;
    std::shared_ptr<const Fq> fmat;  // matrix entry field
    std::shared_ptr<MatGroup> group;
    std::vector<TorusRealization> tori;  // ordered as enumerate_torus_classes

    std::vector<cplx> weil_trace;  // per element
    ClassFunction weil;
    std::string weil_note;

    // U-family groups carry their symplectic realization for reference.
    std::shared_ptr<MatGroup> ambient;
    std::vector<int> ambient_index;

    int torus_index(const TorusDatum& datum) const;
};

// chi residue vector -> virtual class function
using DLTorusTable = std::map<std::vector<long long>, ClassFunction>;

struct DLValidationReport {
    long long pairs_checked = 0;
    long long weyl_count_matches = 0;
    bool ok = false;
};

class Oracle {
public:
    explicit Oracle(long long psi_amp = 1);

    long long psi_amp() const { return amp_; }

    // Supported: Sp n=1 q in {3,5,7}; Sp n=2 q=3; GL n=1 q in {3,5,7};
    // GL n=2 q in {3,5}; U n=1 q in {3,5}; U n=2 q=3.
    const OracleGroup& group(const GroupSpec& spec);

    // Full DL table of one torus class; throws SizeError when the torus
    // needs unshipped Green functions (the two elliptic Sp_4 classes).
    const DLTorusTable& dl_table(const GroupSpec& spec, int torus_index);

    ClassFunction dl_character(const GroupSpec& spec, const TorusDatum& datum,
                               const std::vector<long long>& chi);

    // Orthogonality of the whole table against exhaustive Weyl counting,
    // plus degree and regular-semisimple restriction checks.
    DLValidationReport validate_dl(const GroupSpec& spec);

    // Weil data with matrices kept (used by the Jacobi descent).
    const WeilData& weil_matrices(const GroupSpec& sp_spec);

    const AdditiveCharacter& psi(long long p);

private:
    struct Bundle {
        OracleGroup og;
        std::vector<DLTorusTable> tables;  // per torus, lazily built
        std::vector<bool> table_built;
    };
    Bundle& bundle(const GroupSpec& spec);
    void build_group(Bundle& b, const GroupSpec& spec);
    void build_table(Bundle& b, int torus_index);

    long long amp_;
    std::map<std::tuple<int, int, long long>, Bundle> cache_;
    std::map<long long, std::shared_ptr<AdditiveCharacter>> psis_;
    std::map<std::pair<int, long long>, WeilData> weil_mats_;
    std::map<long long, std::shared_ptr<Fq>> fields_;  // key p * 10 + d
};

}  // namespace fjm::oracle
