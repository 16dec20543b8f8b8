#include "bivcox/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bivcox {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_sample_csv(std::ostream& os, const SamplePairSet& pairs) {
    os << (pairs.lifetimes ? "x,y" : "u,v");
    for (std::size_t k = 0; k < pairs.covariate_dim; ++k) {
        os << ",z" << (k + 1);
    }
    os << "\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        os << format_double(pairs.a[i]) << "," << format_double(pairs.b[i]);
        for (std::size_t k = 0; k < pairs.covariate_dim; ++k) {
            os << "," << format_double(pairs.covariates[i * pairs.covariate_dim + k]);
        }
        os << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    return out;
}

double parse_double(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv: bad numeric field '" + s + "' on line " +
                                 std::to_string(lineno));
    }
}

} // namespace

SamplePairSet read_sample_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
    const auto header = split_csv_line(line);
    if (header.size() < 2) throw std::runtime_error("csv: need at least two columns");

    SamplePairSet out;
    out.lifetimes = (header[0] == "x");
    out.covariate_dim = header.size() - 2;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("csv: wrong field count on line " +
                                     std::to_string(lineno));
        }
        out.append(parse_double(fields[0], lineno), parse_double(fields[1], lineno));
        for (std::size_t k = 2; k < fields.size(); ++k) {
            out.covariates.push_back(parse_double(fields[k], lineno));
        }
    }
    if (out.size() == 0) throw std::runtime_error("csv: no data rows");
    return out;
}

ObservationSet read_observations_csv(std::istream& is) {
    const SamplePairSet pairs = read_sample_csv(is);
    ObservationSet obs;
    obs.x = pairs.a;
    obs.y = pairs.b;
    obs.covariate_dim = pairs.covariate_dim;
    obs.z = pairs.covariates;
    obs.validate();
    return obs;
}

} // namespace bivcox
