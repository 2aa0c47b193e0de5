#pragma once

#include "eds/form.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eds {

struct CaseIError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// coordinates x, y, kappa, p, q; f and Phi depend on (x, y) with Phi_xy = exp(2f)
struct CaseIModel {
    Registry reg;
    Space sp{reg};
    bool symbolic_f = true, symbolic_phi = true;
    Expr f, Phi, E;
    Expr fx, fy, fxy, Px, Py;
};
// nullopt means symbolic; concrete Phi must satisfy Phi_xy = exp(2f)
std::unique_ptr<CaseIModel> case1_model(const std::optional<std::string>& f, const std::optional<std::string>& phi);

// eta with g ^ eta = r; throws if some term lacks g
Form divide_out(const Form& r, int g);

struct NamedResidual {
    std::string name;
    Form residual;
};

struct CaseICoframe {
    std::vector<Form> omega;
    Form phi0, phi1, phi3, phi7;
    Expr A;
    std::vector<NamedResidual> residuals;
    bool ok() const;
};
CaseICoframe case1_coframe(CaseIModel& m);

Expr invariant_A(CaseIModel& m);

// z_xy + a z_x + b z_y + c z = 0
struct CaseIPDE {
    Expr a, b, c;
    std::string text;
    Form check;   // e^f w1^w2 - dx^(dP + (aP + bQ + cZ) dy) mod w0, zero when consistent
};
CaseIPDE case1_pde(CaseIModel& m);
std::string format_pde(const Registry& reg, const Expr& a, const Expr& b, const Expr& c);

struct Cohomogeneity {
    enum Level { zero, one, at_least_two, indeterminate } level = indeterminate;
    std::vector<std::pair<std::string, Expr>> witnesses;
};
std::string to_string(Cohomogeneity::Level l);
Cohomogeneity case1_cohomogeneity(CaseIModel& m);

}
