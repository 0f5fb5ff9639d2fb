#include "divbound/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "divbound/error.hpp"

namespace divbound::io {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

bool parse_double(const std::string& s, double& v) {
    const char* b = s.data();
    const char* e = b + s.size();
    if (b != e && *b == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    return res.ec == std::errc() && res.ptr == e;
}

double number_or_throw(const std::string& s, const std::string& what, int line = 0) {
    double v = 0.0;
    if (!parse_double(s, v) || !std::isfinite(v)) throw ParseError("invalid " + what + " '" + s + "'", line);
    return v;
}

int integer_or_throw(const std::string& s, const std::string& what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("invalid " + what + " '" + s + "'");
    return v;
}

std::string render_scalar(const Document& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_cell(const Document& v) {
    const std::string s = render_scalar(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

Document rounded(const Document& doc) {
    if (doc.is_number_float()) return number(doc.get<double>());
    if (doc.is_object()) {
        Document out = Document::object();
        for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = rounded(it.value());
        return out;
    }
    if (doc.is_array()) {
        Document out = Document::array();
        for (const auto& v : doc) out.push_back(rounded(v));
        return out;
    }
    return doc;
}

}  // namespace

ParsedDistribution parse_distribution(std::istream& in, bool renormalize) {
    std::string raw;
    int line_no = 0;
    std::string kind;
    int kind_line = 0;
    std::vector<double> xs;
    std::vector<double> ps;
    std::vector<int> lines;
    bool header_allowed = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line, ',');
        if (kind.empty()) {
            if (cells.size() != 2 || cells[0] != "kind" || (cells[1] != "pmf" && cells[1] != "grid"))
                throw ParseError("expected header 'kind,pmf' or 'kind,grid'", line_no);
            kind = cells[1];
            kind_line = line_no;
            continue;
        }
        if (cells.size() != 2) throw ParseError("expected two columns 'x,p'", line_no);
        double x = 0.0;
        if (header_allowed && !parse_double(cells[0], x)) {
            header_allowed = false;
            if (cells[0] == "x") continue;  // column header
        }
        header_allowed = false;
        x = number_or_throw(cells[0], "point", line_no);
        const double p = number_or_throw(cells[1], "probability", line_no);
        if (p < 0.0) throw ParseError("negative probability " + cells[1], line_no);
        if (kind == "pmf" && x != std::floor(x)) throw ParseError("pmf support must be integers", line_no);
        if (!xs.empty() && x <= xs.back()) throw ParseError("points must be strictly increasing", line_no);
        xs.push_back(x);
        ps.push_back(p);
        lines.push_back(line_no);
    }
    if (kind.empty()) throw ParseError("empty distribution file", line_no);
    if (xs.empty()) throw ParseError("no data rows", kind_line);
    if (kind == "grid" && xs.size() < 2) throw ParseError("a grid needs at least two nodes", lines.back());

    const double total = kind == "pmf" ? [&] {
        double s = 0.0;
        for (double p : ps) s += p;
        return s;
    }()
                                       : trapezoid(xs, ps);
    if (!(total > 0.0)) throw ParseError("total mass is zero", kind_line);
    const bool close = std::abs(total - 1.0) <= kNormalizationTol;
    if (!close && !renormalize) {
        std::ostringstream os;
        os.precision(12);
        os << "total mass " << total << " differs from 1 by more than " << kNormalizationTol
           << " (use --renormalize)";
        throw ParseError(os.str(), kind_line);
    }
    for (double& p : ps) p /= total;
    ParsedDistribution out{kind == "pmf" ? [&] {
        std::vector<long> support(xs.begin(), xs.end());
        return DistributionSpec::pmf(std::move(support), ps);
    }()
                                         : DistributionSpec::grid(xs, ps),
                           total, total != 1.0};
    return out;
}

ParsedDistribution parse_distribution_file(const std::string& path, bool renormalize) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open distribution file '" + path + "'");
    return parse_distribution(in, renormalize);
}

verify::Target parse_target(const std::string& spec) {
    using expfam::AnalyticFamily;
    const auto p = split(spec, ':');
    auto fail = [&]() -> verify::Target { throw ParseError("unrecognized target '" + spec + "'"); };
    if (p.empty()) return fail();
    const std::string& head = p[0];
    if (head == "gamma" && p.size() == 4) {
        const double alpha = number_or_throw(p[1], "gamma alpha");
        if (!(alpha > -1.0)) throw ParseError("gamma alpha must exceed -1");
        if (p[2] == "laguerre") {
            const int k = integer_or_throw(p[3], "laguerre order");
            if (k < 1) throw ParseError("laguerre order must be >= 1");
            return verify::LaguerreTarget{alpha, k};
        }
        if (p[2] == "mean") {
            const double m = number_or_throw(p[3], "mean");
            if (!(m > 0.0)) throw ParseError("gamma mean must be positive");
            return verify::AnalyticTarget{AnalyticFamily::gamma(alpha), m};
        }
        return fail();
    }
    if (head == "gaussian" && p.size() == 3) {
        if (p[1] == "hermite") {
            const int n = integer_or_throw(p[2], "hermite order");
            if (n < 2 || n % 2 != 0) throw ParseError("hermite order must be even and >= 2");
            return verify::HermiteTarget{n};
        }
        if (p[1] == "mean") return verify::AnalyticTarget{AnalyticFamily::gaussian_mean(), number_or_throw(p[2], "mean")};
        if (p[1] == "second") {
            const double m = number_or_throw(p[2], "second moment");
            if (!(m > 0.0)) throw ParseError("second moment must be positive");
            return verify::AnalyticTarget{AnalyticFamily::gaussian_second_moment(), m};
        }
        return fail();
    }
    if (head == "poisson" && p.size() == 2) {
        const double lambda = number_or_throw(p[1], "poisson rate");
        if (!(lambda > 0.0)) throw ParseError("poisson rate must be positive");
        return verify::AnalyticTarget{AnalyticFamily::poisson(), lambda};
    }
    if (head == "binomial" && p.size() == 3) {
        const int n = integer_or_throw(p[1], "binomial n");
        const double prob = number_or_throw(p[2], "binomial p");
        if (n < 1 || !(prob > 0.0 && prob < 1.0)) throw ParseError("binomial needs n >= 1 and 0 < p < 1");
        return verify::AnalyticTarget{AnalyticFamily::binomial(n), n * prob};
    }
    if (head == "negbin" && p.size() == 3) {
        const double r = number_or_throw(p[1], "negbin r");
        const double prob = number_or_throw(p[2], "negbin p");
        if (!(r > 0.0) || !(prob > 0.0 && prob < 1.0)) throw ParseError("negbin needs r > 0 and 0 < p < 1");
        return verify::AnalyticTarget{AnalyticFamily::negative_binomial(r), r * prob / (1.0 - prob)};
    }
    if (head == "invgauss" && p.size() == 3) {
        const double mu = number_or_throw(p[1], "invgauss mu");
        const double lambda = number_or_throw(p[2], "invgauss lambda");
        if (!(mu > 0.0) || !(lambda > 0.0)) throw ParseError("invgauss needs mu > 0 and lambda > 0");
        return verify::AnalyticTarget{AnalyticFamily::inverse_gaussian(lambda), mu};
    }
    return fail();
}

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "pretty") return Format::Pretty;
    throw ParseError("unknown format '" + name + "'");
}

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

nlohmann::ordered_json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return round12(v) + 0.0;  // +0.0 drops a negative zero
}

std::string render(const Document& doc, Format format) {
    const Document d = rounded(doc);
    if (format == Format::Json) return d.dump(2) + "\n";

    const Document* rows = nullptr;
    std::vector<std::pair<std::string, const Document*>> scalars;
    for (auto it = d.begin(); it != d.end(); ++it) {
        if (it.key() == "rows" && it.value().is_array())
            rows = &it.value();
        else
            scalars.emplace_back(it.key(), &it.value());
    }
    std::ostringstream os;
    if (format == Format::Csv) {
        if (rows == nullptr) {
            os << "key,value\n";
            for (const auto& [k, v] : scalars) os << k << ',' << csv_cell(*v) << '\n';
            return os.str();
        }
        for (const auto& [k, v] : scalars) os << "# " << k << '=' << render_scalar(*v) << '\n';
        if (rows->empty()) return os.str();
        bool first = true;
        for (auto it = (*rows)[0].begin(); it != (*rows)[0].end(); ++it) {
            os << (first ? "" : ",") << it.key();
            first = false;
        }
        os << '\n';
        for (const auto& row : *rows) {
            first = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                os << (first ? "" : ",") << csv_cell(it.value());
                first = false;
            }
            os << '\n';
        }
        return os.str();
    }

    std::size_t width = 0;
    for (const auto& [k, v] : scalars) width = std::max(width, k.size());
    for (const auto& [k, v] : scalars)
        os << k << std::string(width - k.size() + 2, ' ') << (v->is_object() || v->is_array() ? v->dump() : render_scalar(*v))
           << '\n';
    if (rows != nullptr && !rows->empty()) {
        std::vector<std::string> keys;
        for (auto it = (*rows)[0].begin(); it != (*rows)[0].end(); ++it) keys.push_back(it.key());
        std::vector<std::vector<std::string>> cells;
        std::vector<std::size_t> w(keys.size());
        for (std::size_t c = 0; c < keys.size(); ++c) w[c] = keys[c].size();
        for (const auto& row : *rows) {
            std::vector<std::string> line;
            std::size_t c = 0;
            for (auto it = row.begin(); it != row.end() && c < keys.size(); ++it, ++c) {
                line.push_back(render_scalar(it.value()));
                w[c] = std::max(w[c], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        os << '\n';
        auto emit = [&](const std::vector<std::string>& line) {
            for (std::size_t c = 0; c < line.size(); ++c)
                os << line[c] << (c + 1 < line.size() ? std::string(w[c] - line[c].size() + 2, ' ') : "");
            os << '\n';
        };
        emit(keys);
        for (const auto& line : cells) emit(line);
    }
    return os.str();
}

}  // namespace divbound::io
