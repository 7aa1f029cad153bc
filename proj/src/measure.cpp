#include "pairsim/measure.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, const char* what) {
    s = trim(s);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw SpecError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    return value;
}

// Splits on commas outside any [...] nesting.
std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[') ++depth;
        else if (s[i] == ']') --depth;
        else if (s[i] == ',' && depth == 0) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", w);
    return buf;
}

}  // namespace

MeasureSpec MeasureSpec::convex(std::vector<std::pair<MeasureSpec, double>> terms) {
    MeasureSpec spec;
    spec.kind = Kind::Convex;
    for (auto& [member, weight] : terms) {
        spec.members.push_back(std::move(member));
        spec.weights.push_back(weight);
    }
    return spec;
}

MeasureSpec MeasureSpec::product(MeasureSpec first, MeasureSpec second) {
    MeasureSpec spec;
    spec.kind = Kind::Product;
    spec.members.push_back(std::move(first));
    spec.members.push_back(std::move(second));
    return spec;
}

void MeasureSpec::validate() const {
    switch (kind) {
        case Kind::SimRank:
        case Kind::RvsSimRank:
        case Kind::PSimRank:
        case Kind::SimRankStar:
        case Kind::PSimRankStar:
            return;
        case Kind::PRank:
            if (!(lambda >= 0.0 && lambda <= 1.0))
                throw SpecError("prank lambda must lie in [0,1]");
            return;
        case Kind::Convex: {
            if (members.empty())
                throw SpecError("convex spec needs at least one member");
            if (weights.size() != members.size())
                throw SpecError("convex weights do not match members");
            double sum = 0.0;
            for (double w : weights) {
                if (w < 0.0) throw SpecError("convex weights must be nonnegative");
                sum += w;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw SpecError("convex weights must sum to 1");
            for (const auto& m : members) m.validate();
            return;
        }
        case Kind::Product: {
            if (members.size() != 2)
                throw SpecError("product spec needs exactly two marginals");
            for (const auto& m : members) {
                if (m.kind != Kind::SimRank && m.kind != Kind::RvsSimRank)
                    throw SpecError(
                        "product marginals are limited to simrank and rvs");
            }
            return;
        }
    }
    throw SpecError("corrupt measure spec");
}

std::string MeasureSpec::to_string() const {
    switch (kind) {
        case Kind::SimRank: return "simrank";
        case Kind::RvsSimRank: return "rvs";
        case Kind::PSimRank: return "psimrank";
        case Kind::SimRankStar: return "simrankstar";
        case Kind::PSimRankStar: return "psimrankstar";
        case Kind::PRank: return "prank:lambda=" + format_weight(lambda);
        case Kind::Convex: {
            std::string out = "convex:[";
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i) out += ',';
                out += members[i].to_string() + "@" + format_weight(weights[i]);
            }
            return out + "]";
        }
        case Kind::Product:
            return "product:" + members[0].to_string() + "," +
                   members[1].to_string();
    }
    return "?";
}

MeasureSpec parse_measure_spec(std::string_view text) {
    std::string_view s = trim(text);
    if (s == "simrank") return MeasureSpec::simrank();
    if (s == "rvs" || s == "rvssimrank") return MeasureSpec::rvs_simrank();
    if (s == "psimrank") return MeasureSpec::psimrank();
    if (s == "simrankstar") return MeasureSpec::simrank_star();
    if (s == "psimrankstar") return MeasureSpec::psimrank_star();

    if (s == "prank") return MeasureSpec::prank(0.5);
    if (s.starts_with("prank:")) {
        std::string_view rest = s.substr(6);
        if (!rest.starts_with("lambda="))
            throw SpecError("prank takes 'lambda=<value>', got '" +
                            std::string(rest) + "'");
        MeasureSpec spec = MeasureSpec::prank(parse_number(rest.substr(7), "lambda"));
        spec.validate();
        return spec;
    }

    if (s.starts_with("convex:")) {
        std::string_view rest = trim(s.substr(7));
        if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            throw SpecError("convex members must be bracketed: convex:[...]");
        std::vector<std::pair<MeasureSpec, double>> terms;
        for (std::string_view part : split_top_level(rest.substr(1, rest.size() - 2))) {
            part = trim(part);
            // the weight sits after the last top-level '@'
            std::size_t at = std::string_view::npos;
            int depth = 0;
            for (std::size_t i = 0; i < part.size(); ++i) {
                if (part[i] == '[') ++depth;
                else if (part[i] == ']') --depth;
                else if (part[i] == '@' && depth == 0) at = i;
            }
            if (at == std::string_view::npos)
                throw SpecError("convex member needs a weight: '" +
                                std::string(part) + "'");
            terms.emplace_back(parse_measure_spec(part.substr(0, at)),
                               parse_number(part.substr(at + 1), "convex weight"));
        }
        MeasureSpec spec = MeasureSpec::convex(std::move(terms));
        spec.validate();
        return spec;
    }

    if (s.starts_with("product:")) {
        auto parts = split_top_level(s.substr(8));
        if (parts.size() != 2)
            throw SpecError("product takes exactly two marginals");
        MeasureSpec spec = MeasureSpec::product(parse_measure_spec(parts[0]),
                                                parse_measure_spec(parts[1]));
        spec.validate();
        return spec;
    }

    throw SpecError("unknown measure spec: '" + std::string(s) + "'");
}

}  // namespace pairsim
