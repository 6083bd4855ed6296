#include "levcorr/errors.hpp"

#include <utility>

namespace levcorr {

MalformedLine::MalformedLine(std::size_t line_no, const std::string& why)
    : Error("malformed line " + std::to_string(line_no) + (why.empty() ? "" : ": " + why)),
      line_no_(line_no) {}

NonPositivePrice::NonPositivePrice(std::size_t line_no)
    : Error("non-positive price on line " + std::to_string(line_no)), line_no_(line_no) {}

LagOutOfRange::LagOutOfRange(long lag, std::size_t n)
    : Error("lag " + std::to_string(lag) + " out of range for series of length " + std::to_string(n)),
      lag_(lag) {}

InsufficientPoints::InsufficientPoints(std::size_t have, std::size_t need)
    : Error("insufficient points for fit: have " + std::to_string(have) + ", need " +
            std::to_string(need)) {}

NonPositiveData::NonPositiveData(std::vector<double> excluded_x)
    : Error("too few positive data points; " + std::to_string(excluded_x.size()) +
            " non-positive points excluded"),
      excluded_x_(std::move(excluded_x)) {}

NoConvergence::NoConvergence(const std::string& why, std::vector<double> last_params, double last_chi2)
    : Error("fit did not converge: " + why), last_params_(std::move(last_params)), last_chi2_(last_chi2) {}

}  // namespace levcorr
