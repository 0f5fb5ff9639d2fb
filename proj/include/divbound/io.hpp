#pragma once

#include <istream>
#include <string>

#include <json.hpp>

#include "divbound/distribution.hpp"
#include "divbound/verify.hpp"

// Text formats: distribution files, target strings and report rendering.
namespace divbound::io {

// Relative tolerance on the total mass of a distribution file.
inline constexpr double kNormalizationTol = 1e-8;

struct ParsedDistribution {
    DistributionSpec spec;
    double raw_total;  // mass before renormalization
    bool renormalized;
};

// Headered CSV:
//
//   kind,pmf        (or kind,grid)
//   x,p             optional column header
//   0,0.25
//   ...
//
// Blank lines and lines starting with '#' are skipped. pmf points must be
// integers; grid nodes strictly increasing. A total mass within
// kNormalizationTol of one is rescaled exactly; further off is an error
// unless renormalize is set. Errors carry the offending line number.
ParsedDistribution parse_distribution(std::istream& in, bool renormalize = false);
ParsedDistribution parse_distribution_file(const std::string& path, bool renormalize = false);

// gamma:<alpha>:laguerre:<k>   gaussian:hermite:<n>     poisson:<lambda>
// binomial:<n>:<p>             negbin:<r>:<p>           invgauss:<mu>:<lambda>
// gamma:<alpha>:mean:<m>       gaussian:mean:<m>        gaussian:second:<m>
verify::Target parse_target(const std::string& spec);

enum class Format { Json, Csv, Pretty };
Format parse_format(const std::string& name);

// Rounds to 12 significant digits (what every report prints).
double round12(double v);

// Report documents are ordered JSON objects of scalars, optionally with a
// "rows" array of flat objects. Non-finite numbers are stored as strings
// ("inf", "-inf", "nan").
using Document = nlohmann::ordered_json;
nlohmann::ordered_json number(double v);

// JSON: the document with every number rounded. CSV: the rows (or the
// scalars as key,value pairs when there are none), with scalars as leading
// '# key=value' lines. Pretty: aligned key/value list followed by a table.
std::string render(const Document& doc, Format format);

}  // namespace divbound::io
