#include "fcover/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

namespace fcover {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    FunctionExpr parse() {
        FunctionExpr e = expr();
        skip_ws();
        if (at_ < s_.size()) fail("trailing input after expression");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, at_); }

    void skip_ws() {
        while (at_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[at_]))) ++at_;
    }

    char peek() {
        skip_ws();
        return at_ < s_.size() ? s_[at_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++at_;
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++at_;
        return true;
    }

    std::string identifier() {
        skip_ws();
        size_t start = at_;
        while (at_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[at_])) || s_[at_] == '_'))
            ++at_;
        if (at_ == start) fail("expected an identifier");
        return s_.substr(start, at_ - start);
    }

    double number() {
        skip_ws();
        const char* begin = s_.c_str() + at_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        at_ += static_cast<size_t>(end - begin);
        if (!std::isfinite(v)) fail("number out of range");
        return v;
    }

    // norm exponent: a number or the keyword inf
    double pnum() {
        skip_ws();
        if (at_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[at_]))) {
            size_t pos = at_;
            std::string id = identifier();
            if (id == "inf") return std::numeric_limits<double>::infinity();
            at_ = pos;
            fail("expected a norm exponent (1, 2 or inf)");
        }
        return number();
    }

    std::vector<double> number_list(size_t min_count, size_t max_count) {
        std::vector<double> out;
        out.push_back(number());
        while (out.size() < max_count && accept(',')) out.push_back(number());
        if (out.size() < min_count) fail("too few arguments");
        return out;
    }

    template <typename F>
    FunctionExpr domain_checked(F&& make) {
        size_t pos = at_;
        try {
            return make();
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), pos);
        }
    }

    FunctionExpr expr() {
        skip_ws();
        size_t pos = at_;
        std::string head = identifier();

        if (head == "one") return FunctionExpr::one();

        expect('(');
        FunctionExpr result = call(head, pos);
        expect(')');
        return result;
    }

    FunctionExpr call(const std::string& head, size_t pos) {
        if (head == "gauss") {
            double a = number();
            return domain_checked([&] { return FunctionExpr::gaussian(SymMat(a)); });
        }
        if (head == "gauss2") {
            double a11 = number();
            expect(',');
            double a12 = number();
            expect(',');
            double a22 = number();
            return domain_checked([&] { return FunctionExpr::gaussian(SymMat(a11, a12, a22)); });
        }
        if (head == "ind_box") {
            double lo = number();
            expect(',');
            double hi = number();
            return domain_checked([&] { return FunctionExpr::indicator_box(Point(lo), Point(hi)); });
        }
        if (head == "ind_box2") {
            double lo1 = number();
            expect(',');
            double hi1 = number();
            expect(',');
            double lo2 = number();
            expect(',');
            double hi2 = number();
            return domain_checked(
                [&] { return FunctionExpr::indicator_box(Point(lo1, lo2), Point(hi1, hi2)); });
        }
        if (head == "ind_ball") {
            double p = pnum();
            expect(',');
            double r = number();
            return domain_checked([&] { return FunctionExpr::indicator_ball(p, r); });
        }
        if (head == "expnorm") {
            double p = pnum();
            expect(',');
            double c = number();
            return domain_checked([&] { return FunctionExpr::expnorm(p, c); });
        }
        if (head == "translate") {
            FunctionExpr child = expr();
            expect(',');
            std::vector<double> a = number_list(1, 2);
            Point offset = a.size() == 1 ? Point(a[0]) : Point(a[0], a[1]);
            return domain_checked([&] { return FunctionExpr::translate(child, offset); });
        }
        if (head == "reflect") {
            FunctionExpr child = expr();
            return FunctionExpr::reflect(child);
        }
        if (head == "linmap") {
            FunctionExpr child = expr();
            expect(',');
            std::vector<double> a = number_list(1, 4);
            if (a.size() != 1 && a.size() != 4) fail("linmap takes 1 (1D) or 4 (2D) entries");
            Mat m = a.size() == 1 ? Mat(a[0]) : Mat(a[0], a[1], a[2], a[3]);
            return domain_checked([&] { return FunctionExpr::linear_map(child, m); });
        }
        if (head == "scale") {
            FunctionExpr child = expr();
            expect(',');
            double a = number();
            return domain_checked([&] { return FunctionExpr::scale_value(child, a); });
        }
        if (head == "hscale") {
            FunctionExpr child = expr();
            expect(',');
            double lambda = number();
            return domain_checked([&] { return FunctionExpr::hadwiger_scale(child, lambda); });
        }
        if (head == "prod") {
            FunctionExpr a = expr();
            expect(',');
            FunctionExpr b = expr();
            return domain_checked([&] { return FunctionExpr::product(a, b); });
        }
        if (head == "pow") {
            FunctionExpr child = expr();
            expect(',');
            double a = number();
            return domain_checked([&] { return FunctionExpr::power(child, a); });
        }
        throw ParseError("unknown function '" + head + "'", pos);
    }

    const std::string& s_;
    size_t at_ = 0;
};

}  // namespace

FunctionExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace fcover
