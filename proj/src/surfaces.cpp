#include "wl/surfaces.hpp"

#include <cctype>
#include <stdexcept>

namespace wl {

namespace {
const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
}

std::array<CJet4, 3> HexagonalTorus::jets(double u, double v) const {
    CJet4 ju = CJet4::var_u(Cplx(u, 0));
    CJet4 jv = CJet4::var_v(Cplx(v, 0));
    const Cplx I(0, 1);
    CJet4 x1 = jet_exp(I * ju);
    CJet4 x2 = jet_exp(I * jv);
    CJet4 x3 = jet_exp((-I) * (ju + jv));
    return {Cplx(inv_sqrt3, 0) * x1, Cplx(inv_sqrt3, 0) * x2, Cplx(inv_sqrt3, 0) * x3};
}

std::array<CJet4, 3> EquatorialSphere::jets(double u, double v) const {
    RJet4 ju = RJet4::var_u(u);
    RJet4 jv = RJet4::var_v(v);
    RJet4 cu = jet_cos(ju), su = jet_sin(ju);
    RJet4 cv = jet_cos(jv), sv = jet_sin(jv);
    RJet4 zero;
    return {jet_complexify(cu * cv, zero), jet_complexify(su * cv, zero),
            jet_complexify(sv, zero)};
}

// ---------------------------------------------------------------------------
// Expression surfaces

struct ExprSurface::Node {
    enum Kind { Num, VarU, VarV, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Sqrt } kind;
    Cplx value{};
    int exponent = 0;
    std::shared_ptr<const Node> a, b;

    CJet4 eval(const CJet4& u, const CJet4& v) const {
        switch (kind) {
            case Num: return CJet4::constant(value);
            case VarU: return u;
            case VarV: return v;
            case Add: return a->eval(u, v) + b->eval(u, v);
            case Sub: return a->eval(u, v) - b->eval(u, v);
            case Mul: return a->eval(u, v) * b->eval(u, v);
            case Div: return a->eval(u, v) / b->eval(u, v);
            case Neg: return -a->eval(u, v);
            case Pow: {
                CJet4 base = a->eval(u, v);
                CJet4 r = CJet4::constant(Cplx(1, 0));
                for (int k = 0; k < exponent; ++k) r = r * base;
                return r;
            }
            case Sin: return jet_sin(a->eval(u, v));
            case Cos: return jet_cos(a->eval(u, v));
            case Exp: return jet_exp(a->eval(u, v));
            case Sqrt: return jet_sqrt(a->eval(u, v));
        }
        throw std::logic_error("unreachable");
    }
};

namespace {

using NodePtr = std::shared_ptr<const ExprSurface::Node>;

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;
    explicit ExprParser(const std::string& text) : s(text) {}

    using Node = ExprSurface::Node;

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("surface expression: " + msg + " at offset " +
                                    std::to_string(pos));
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat_word(const char* w) {
        skip();
        std::size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    NodePtr parse() {
        NodePtr r = expr();
        skip();
        if (pos != s.size()) fail("trailing input");
        return r;
    }
    NodePtr expr() {
        NodePtr r;
        if (peek() == '-') {
            ++pos;
            r = make({Node::Neg, {}, 0, term(), nullptr});
        } else {
            r = term();
        }
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                r = make({Node::Add, {}, 0, r, term()});
            } else if (c == '-') {
                ++pos;
                r = make({Node::Sub, {}, 0, r, term()});
            } else
                break;
        }
        return r;
    }
    NodePtr term() {
        NodePtr r = power();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                r = make({Node::Mul, {}, 0, r, power()});
            } else if (c == '/') {
                ++pos;
                r = make({Node::Div, {}, 0, r, power()});
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
                r = make({Node::Mul, {}, 0, r, power()});
            } else
                break;
        }
        return r;
    }
    NodePtr power() {
        NodePtr b = primary();
        if (peek() == '^') {
            ++pos;
            skip();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("expected integer exponent");
            int e = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                e = e * 10 + (s[pos++] - '0');
            return make({Node::Pow, {}, e, b, nullptr});
        }
        return b;
    }
    NodePtr func(Node::Kind k) {
        if (peek() != '(') fail("expected '('");
        ++pos;
        NodePtr a = expr();
        if (peek() != ')') fail("expected ')'");
        ++pos;
        return make({k, {}, 0, a, nullptr});
    }
    NodePtr primary() {
        char c = peek();
        if (c == '(') {
            ++pos;
            NodePtr r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return r;
        }
        if (eat_word("sin")) return func(Node::Sin);
        if (eat_word("cos")) return func(Node::Cos);
        if (eat_word("exp")) return func(Node::Exp);
        if (eat_word("sqrt")) return func(Node::Sqrt);
        if (eat_word("pi")) return make({Node::Num, Cplx(M_PI, 0), 0, nullptr, nullptr});
        if (c == 'u') {
            ++pos;
            return make({Node::VarU, {}, 0, nullptr, nullptr});
        }
        if (c == 'v') {
            ++pos;
            return make({Node::VarV, {}, 0, nullptr, nullptr});
        }
        if (c == 'i') {
            ++pos;
            return make({Node::Num, Cplx(0, 1), 0, nullptr, nullptr});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
                ++pos;
            return make({Node::Num, Cplx(std::stod(s.substr(start, pos - start)), 0), 0,
                         nullptr, nullptr});
        }
        fail("unexpected character");
    }
};

}  // namespace

ExprSurface::ExprSurface(const std::array<std::string, 3>& exprs, const SurfaceDomain& dom)
    : dom_(dom) {
    for (int k = 0; k < 3; ++k) {
        ExprParser p(exprs[k]);
        ast_[k] = p.parse();
    }
}

ExprSurface::~ExprSurface() = default;

std::array<CJet4, 3> ExprSurface::jets(double u, double v) const {
    CJet4 ju = CJet4::var_u(Cplx(u, 0));
    CJet4 jv = CJet4::var_v(Cplx(v, 0));
    return {ast_[0]->eval(ju, jv), ast_[1]->eval(ju, jv), ast_[2]->eval(ju, jv)};
}

std::unique_ptr<SurfaceJet> make_builtin_surface(const std::string& name) {
    if (name == "hexagonal_torus") return std::make_unique<HexagonalTorus>();
    if (name == "equatorial_s2") return std::make_unique<EquatorialSphere>();
    return nullptr;
}

}  // namespace wl
