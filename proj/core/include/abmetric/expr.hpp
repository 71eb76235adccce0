#pragma once

// Tiny arithmetic expression language for config-defined metric entries:
// numbers, variables x1..x9, + - * / ^, parentheses, exp/log/sin/cos/sqrt.
// Evaluation is generic over the scalar so the same AST yields values and
// exact first derivatives (dual numbers).

#include <abmetric/errors.hpp>
#include <abmetric/fd.hpp>

#include <memory>
#include <string>

namespace abm {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

class Expression {
public:
    Expression() = default;
    // Throws ParseError (line reported as 0; callers rewrap with location).
    static Expression parse(const std::string& text, int max_var);

    double eval(const Vec& x) const;
    // value + exact gradient via forward-mode duals
    std::pair<double, Vec> eval_with_gradient(const Vec& x) const;
    const std::string& text() const { return text_; }
    bool empty() const { return root_ == nullptr; }

private:
    ExprPtr root_;
    std::string text_;
    int max_var_ = 0;
};

}  // namespace abm
