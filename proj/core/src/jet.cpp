#include "crcalc/jet.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace crcalc {

namespace {

void gen_exps(int nvars, int tcap, int var, int remaining, std::vector<int>& cur,
              std::vector<std::vector<int>>& out) {
    if (var == nvars - 1) {
        if (remaining <= tcap) {
            cur[var] = remaining;
            out.push_back(cur);
            cur[var] = 0;
        }
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[var] = e;
        gen_exps(nvars, tcap, var + 1, remaining - e, cur, out);
    }
    cur[var] = 0;
}

} // namespace

std::shared_ptr<const JetShape> JetShape::get(int nvars, int order, int tcap) {
    if (tcap < 0) tcap = order;
    if (order > 15 || nvars > 8) fail(ErrorKind::BadInput, "jet shape limits: order <= 15, nvars <= 8");

    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const JetShape>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(nvars, order, tcap);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto sh = std::make_shared<JetShape>();
    sh->nvars = nvars;
    sh->order = order;
    sh->tcap = tcap;
    std::vector<int> cur(nvars, 0);
    for (int d = 0; d <= order; ++d) {
        std::vector<std::vector<int>> batch;
        gen_exps(nvars, tcap, 0, d, cur, batch);
        for (const auto& e : batch) {
            std::array<std::uint8_t, 8> a{};
            for (int v = 0; v < nvars; ++v) a[v] = std::uint8_t(e[v]);
            sh->exps.push_back(a);
            sh->degs.push_back(std::uint8_t(d));
            sh->keys.push_back(pack(e));
            sh->index.emplace(sh->keys.back(), std::int32_t(sh->keys.size() - 1));
        }
    }
    cache.emplace(key, sh);
    return sh;
}

Rational parse_rational(const std::string& text) {
    auto bad = [&]() { fail(ErrorKind::SyntaxError, "bad numeric literal: " + text); };
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) bad();
    auto slash = s.find('/');
    Rational r;
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (p.empty() || q.empty()) bad();
        r = Rational(mpz_class(p), mpz_class(q));
    } else {
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            r = Rational(mpz_class(s));
        } else {
            std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
            if (ip.empty() && fp.empty()) bad();
            if (ip.empty()) ip = "0";
            mpz_class den(1);
            for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
            r = Rational(mpz_class(ip) * den + (fp.empty() ? mpz_class(0) : mpz_class(fp)), den);
        }
    }
    r.canonicalize();
    if (neg) r = -r;
    return r;
}

} // namespace crcalc
