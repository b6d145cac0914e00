#include "oddconn/chart.hpp"

#include <cctype>

namespace oddconn {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty())
        return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

} // namespace

Chart::Chart(std::vector<std::string> even_names, std::vector<std::string> odd_names)
    : even_dim_(even_names.size()) {
    if (even_names.size() > 16)
        throw InputError("at most 16 even coordinates are supported");
    if (odd_names.size() > 64)
        throw InputError("at most 64 odd coordinates are supported");
    names_ = std::move(even_names);
    names_.insert(names_.end(), odd_names.begin(), odd_names.end());
    for (std::size_t a = 0; a < names_.size(); ++a) {
        if (!valid_name(names_[a]))
            throw InputError("invalid coordinate name '" + names_[a] + "'");
        if (!index_.emplace(names_[a], a).second)
            throw InputError("duplicate coordinate name '" + names_[a] + "'");
    }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::string Chart::dim_string() const {
    return std::to_string(even_dim()) + "|" + std::to_string(odd_dim());
}

ChartPtr make_chart(std::vector<std::string> even_names, std::vector<std::string> odd_names) {
    return std::make_shared<Chart>(std::move(even_names), std::move(odd_names));
}

void require_same_chart(const Chart& a, const Chart& b, const char* where) {
    if (a != b)
        throw ChartMismatchError(std::string(where) + ": operands live on different charts (" + a.dim_string() +
                                 " vs " + b.dim_string() + ")");
}

} // namespace oddconn
