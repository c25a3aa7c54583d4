#pragma once

#include "sigspec/codespace.hpp"
#include "sigspec/pauli.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sigspec {

using FamilyParams = std::map<std::string, double>;

enum class SymmetryTag { none, cyclic, permutation, noncyclic };

struct FamilyParameter {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
};

// One closed-form code family: a constructor over a validated parameter
// domain together with the predicted signature norm on its error family.
struct FamilyCatalogEntry {
    std::string id;
    int n = 0;
    int K = 0;
    std::string description;
    std::vector<FamilyParameter> params;
    ErrorFamily family;
    SymmetryTag symmetry = SymmetryTag::none;
    std::function<CodeFrame(const FamilyParams&)> build;
    std::function<double(const FamilyParams&)> predicted_lambda;
    // Deterministic parameter grid covering the domain.
    std::function<std::vector<FamilyParams>(int)> grid;
};

const std::vector<FamilyCatalogEntry>& family_catalog();
const FamilyCatalogEntry& catalog_entry(const std::string& id);

CodeFrame build_family_frame(const std::string& id, const FamilyParams& params);
double predicted_lambda(const std::string& id, const FamilyParams& params);

// Three-qubit families E1..E4 and their endpoint stabilizer generators.
ErrorFamily three_qubit_family(int which);
std::vector<PauliOperator> three_qubit_stabilizer(const std::string& id);

// Explicit codes of the disconnected three-qubit example.
ErrorFamily disconnected_tuple();

}  // namespace sigspec
