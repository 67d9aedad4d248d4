#include "catenoid/freealg.hpp"

#include <optional>
#include <utility>

namespace catenoid {

const char* letter_name(Letter l) {
    switch (l) {
    case Letter::U: return "U";
    case Letter::R: return "R";
    case Letter::Rinv: return "R^-1";
    case Letter::W: return "W";
    case Letter::Winv: return "W^-1";
    }
    return "?";
}

std::weak_ordering word_order(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
    return std::weak_ordering::equivalent;
}

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (Letter l : w) {
        if (!s.empty()) s += "*";
        s += letter_name(l);
    }
    return s;
}

void FreeElement::insert(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FreeElement FreeElement::operator-() const {
    FreeElement r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
    FreeElement r = *this;
    for (const auto& [w, c] : o.terms_) r.insert(w, c);
    return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const {
    FreeElement r = *this;
    for (const auto& [w, c] : o.terms_) r.insert(w, -c);
    return r;
}

std::string FreeElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
        std::string t;
        if (w.empty()) {
            t = c.to_string();
        } else if (c.is_one()) {
            t = word_str(w);
        } else if ((-c).is_one()) {
            t = "-" + word_str(w);
        } else {
            std::string cs = c.to_string();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            t = cs + "*" + word_str(w);
        }
        if (out.empty())
            out = t;
        else if (t.front() == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

FreeElement free_mul(const FreeElement& a, const FreeElement& b) {
    FreeElement r;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.insert(w, ca * cb);
        }
    return r;
}

FreeElement scalar_mul(const Scalar& c, const FreeElement& a) {
    FreeElement r;
    for (const auto& [w, coeff] : a.terms()) r.insert(w, c * coeff);
    return r;
}

namespace {

std::array<ReductionRule, 12> make_rules() {
    using enum Letter;
    const Scalar one = Scalar::one();
    const Scalar e_h = Scalar::q_power(2);    // e^{hbar}
    const Scalar e_mh = Scalar::q_power(-2);  // e^{-hbar}
    const Scalar h = Scalar::hbar();

    auto unit = [&] { return FreeElement(one); };
    auto mono = [](std::initializer_list<Letter> ls, const Scalar& c) {
        return FreeElement(Word(ls), c);
    };

    std::array<ReductionRule, 12> rules = {{
        {{Winv, W}, unit()},
        {{W, Winv}, unit()},
        {{Rinv, R}, unit()},
        {{R, Rinv}, unit()},
        {{R, U}, mono({U, R}, one)},
        {{Rinv, U}, mono({U, Rinv}, one)},
        {{W, R}, mono({R, W}, e_h)},
        {{W, Rinv}, mono({Rinv, W}, e_mh)},
        {{Winv, R}, mono({R, Winv}, e_mh)},
        {{Winv, Rinv}, mono({Rinv, Winv}, e_h)},
        {{W, U}, mono({U, W}, one) + mono({W}, h)},
        {{Winv, U}, mono({U, Winv}, one) - mono({Winv}, h)},
    }};

    // Compatibility of the order with the rules: every rhs monomial must be
    // strictly below the lhs.
    for (const auto& rule : rules)
        for (const auto& [w, c] : rule.rhs.terms())
            if (word_order(w, rule.lhs) != std::weak_ordering::less)
                throw std::logic_error("reduction rule is not order-compatible");
    return rules;
}

// Index rules by their two-letter lhs for O(1) redex lookup.
std::optional<std::size_t> rule_for(Letter a, Letter b) {
    static const auto table = [] {
        std::array<std::array<std::optional<std::size_t>, 5>, 5> t{};
        const auto& rules = reduction_rules();
        for (std::size_t i = 0; i < rules.size(); ++i)
            t[static_cast<std::size_t>(rules[i].lhs[0])]
             [static_cast<std::size_t>(rules[i].lhs[1])] = i;
        return t;
    }();
    return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::optional<std::size_t> find_redex(const Word& w, ReductionStrategy strategy) {
    if (w.size() < 2) return std::nullopt;
    if (strategy == ReductionStrategy::leftmost) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (rule_for(w[i], w[i + 1])) return i;
    } else {
        for (std::size_t i = w.size() - 1; i-- > 0;)
            if (rule_for(w[i], w[i + 1])) return i;
    }
    return std::nullopt;
}

constexpr std::size_t kMaxSteps = 50'000'000;

}  // namespace

const std::array<ReductionRule, 12>& reduction_rules() {
    static const auto rules = make_rules();
    return rules;
}

FreeElement normalize(const FreeElement& x, ReductionStrategy strategy, NormalizeStats* stats) {
    const auto& rules = reduction_rules();
    FreeElement result;
    std::vector<std::pair<Word, Scalar>> work(x.terms().begin(), x.terms().end());
    std::size_t steps = 0;

    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        auto pos = find_redex(w, strategy);
        if (!pos) {
            result.insert(w, c);
            continue;
        }
        if (++steps > kMaxSteps)
            throw std::logic_error("normalize: step budget exceeded");
        const ReductionRule& r = rules[*rule_for(w[*pos], w[*pos + 1])];
        for (const auto& [rw, rc] : r.rhs.terms()) {
            Word nw;
            nw.reserve(w.size() - 2 + rw.size());
            nw.insert(nw.end(), w.begin(), w.begin() + *pos);
            nw.insert(nw.end(), rw.begin(), rw.end());
            nw.insert(nw.end(), w.begin() + *pos + 2, w.end());
            // Monotone descent in the semigroup order; this is what makes
            // the loop terminate.
            if (word_order(nw, w) != std::weak_ordering::less)
                throw std::logic_error("normalize: rewrite did not descend");
            Scalar nc = c * rc;
            if (!nc.is_zero()) work.emplace_back(std::move(nw), std::move(nc));
        }
    }
    if (stats) stats->steps = steps;
    return result;
}

AmbiguityReport check_all_ambiguities() {
    const auto& rules = reduction_rules();
    AmbiguityReport report;
    report.all_resolvable = true;

    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            if (rules[i].lhs[1] != rules[j].lhs[0]) continue;
            Ambiguity amb;
            amb.overlap = {rules[i].lhs[0], rules[i].lhs[1], rules[j].lhs[1]};
            amb.first_rule = i;
            amb.second_rule = j;
            // Resolve via the first rule: f_i * C.
            FreeElement left =
                free_mul(rules[i].rhs, FreeElement::generator(rules[j].lhs[1]));
            // Resolve via the second rule: A * f_j.
            FreeElement right =
                free_mul(FreeElement::generator(rules[i].lhs[0]), rules[j].rhs);
            amb.left_normal_form = normalize(left);
            amb.right_normal_form = normalize(right);
            amb.resolvable = amb.left_normal_form == amb.right_normal_form;
            report.all_resolvable = report.all_resolvable && amb.resolvable;
            report.overlaps.push_back(std::move(amb));
        }
    }
    return report;
}

}  // namespace catenoid
