#include <abmetric/expr.hpp>

#include <cctype>
#include <cmath>

namespace abm {

namespace {

// First-order multivariate dual number.
struct DualN {
    double v = 0.0;
    Vec g;

    static DualN constant(double c, int n) { return {c, Vec::Zero(n)}; }
    static DualN var(double value, int i, int n) {
        DualN d{value, Vec::Zero(n)};
        d.g[i] = 1.0;
        return d;
    }
};

DualN operator+(const DualN& a, const DualN& b) { return {a.v + b.v, a.g + b.g}; }
DualN operator-(const DualN& a, const DualN& b) { return {a.v - b.v, a.g - b.g}; }
DualN operator-(const DualN& a) { return {-a.v, -a.g}; }
DualN operator*(const DualN& a, const DualN& b) { return {a.v * b.v, a.v * b.g + b.v * a.g}; }
DualN operator/(const DualN& a, const DualN& b) {
    if (b.v == 0.0) throw DomainError("expression division by zero");
    const double inv = 1.0 / b.v;
    return {a.v * inv, (a.g - (a.v * inv) * b.g) * inv};
}

}  // namespace

struct ExprNode {
    enum Kind { number, variable, add, sub, mul, div, pow_, neg, fn_exp, fn_log, fn_sin, fn_cos, fn_sqrt };
    Kind kind;
    double value = 0.0;  // number
    int index = 0;       // variable
    ExprPtr lhs, rhs;

    template <typename T, typename MakeConst, typename MakeVar>
    T eval(const MakeConst& cst, const MakeVar& var) const {
        switch (kind) {
            case number: return cst(value);
            case variable: return var(index);
            case add: return lhs->eval<T>(cst, var) + rhs->eval<T>(cst, var);
            case sub: return lhs->eval<T>(cst, var) - rhs->eval<T>(cst, var);
            case mul: return lhs->eval<T>(cst, var) * rhs->eval<T>(cst, var);
            case div: return lhs->eval<T>(cst, var) / rhs->eval<T>(cst, var);
            case neg: return -lhs->eval<T>(cst, var);
            default: break;
        }
        const T u = lhs->eval<T>(cst, var);
        if constexpr (std::is_same_v<T, double>) {
            switch (kind) {
                case pow_: return std::pow(u, rhs->eval<T>(cst, var));
                case fn_exp: return std::exp(u);
                case fn_log: return std::log(u);
                case fn_sin: return std::sin(u);
                case fn_cos: return std::cos(u);
                case fn_sqrt: return std::sqrt(u);
                default: throw DomainError("expression: bad node");
            }
        } else {
            switch (kind) {
                case pow_: {
                    // exponent restricted to constants, so d(u^c) = c u^(c-1) du
                    const double c = rhs->value;
                    const double p = std::pow(u.v, c);
                    return T{p, c * std::pow(u.v, c - 1.0) * u.g};
                }
                case fn_exp: {
                    const double e = std::exp(u.v);
                    return T{e, e * u.g};
                }
                case fn_log:
                    if (u.v <= 0.0) throw DomainError("expression: log domain");
                    return T{std::log(u.v), u.g / u.v};
                case fn_sin: return T{std::sin(u.v), std::cos(u.v) * u.g};
                case fn_cos: return T{std::cos(u.v), -std::sin(u.v) * u.g};
                case fn_sqrt: {
                    if (u.v <= 0.0) throw DomainError("expression: sqrt domain");
                    const double r = std::sqrt(u.v);
                    return T{r, u.g / (2.0 * r)};
                }
                default: throw DomainError("expression: bad node");
            }
        }
    }
};

namespace {

class Parser {
public:
    Parser(const std::string& s, int max_var) : s_(s), max_var_(max_var) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(0, "expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr make(ExprNode::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (consume('+')) e = make(ExprNode::add, e, term());
            else if (consume('-')) e = make(ExprNode::sub, e, term());
            else return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (consume('*')) e = make(ExprNode::mul, e, factor());
            else if (consume('/')) e = make(ExprNode::div, e, factor());
            else return e;
        }
    }

    ExprPtr factor() {
        ExprPtr base = unary();
        if (consume('^')) {
            ExprPtr exp = unary();
            if (exp->kind != ExprNode::number) fail("exponent must be a numeric constant");
            return make(ExprNode::pow_, base, exp);
        }
        return base;
    }

    ExprPtr unary() {
        if (consume('-')) return make(ExprNode::neg, unary());
        return primary();
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos_ += used;
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::number;
            n->value = v;
            return n;
        }
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!consume(')')) fail("missing ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t end = pos_;
            while (end < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            const std::string word = s_.substr(pos_, end - pos_);
            pos_ = end;
            if (word.size() >= 2 && word[0] == 'x') {
                int idx = 0;
                for (size_t i = 1; i < word.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(word[i]))) fail("bad variable '" + word + "'");
                    idx = idx * 10 + (word[i] - '0');
                }
                if (idx < 1 || idx > max_var_)
                    fail("variable '" + word + "' out of range (dimension " + std::to_string(max_var_) + ")");
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::variable;
                n->index = idx - 1;
                return n;
            }
            ExprNode::Kind k;
            if (word == "exp") k = ExprNode::fn_exp;
            else if (word == "log") k = ExprNode::fn_log;
            else if (word == "sin") k = ExprNode::fn_sin;
            else if (word == "cos") k = ExprNode::fn_cos;
            else if (word == "sqrt") k = ExprNode::fn_sqrt;
            else fail("unknown function '" + word + "'");
            if (!consume('(')) fail("expected '(' after " + word);
            ExprPtr arg = expr();
            if (!consume(')')) fail("missing ')'");
            return make(k, arg);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    int max_var_;
    size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, int max_var) {
    Expression e;
    e.text_ = text;
    e.max_var_ = max_var;
    e.root_ = Parser(text, max_var).parse();
    return e;
}

double Expression::eval(const Vec& x) const {
    return root_->eval<double>([](double c) { return c; }, [&](int i) { return x[i]; });
}

std::pair<double, Vec> Expression::eval_with_gradient(const Vec& x) const {
    const int n = static_cast<int>(x.size());
    const DualN d = root_->eval<DualN>([n](double c) { return DualN::constant(c, n); },
                                       [&](int i) { return DualN::var(x[i], i, n); });
    return {d.v, d.g};
}

}  // namespace abm
