#include "gfl/sequences.hpp"

#include <charconv>
#include <limits>
#include <sstream>

namespace gfl {

PSequence PSequence::validate(std::uint64_t p, std::vector<std::uint64_t> alpha) {
    if (!is_prime(p))
        throw argument_error("p-sequence: p = " + std::to_string(p) + " is not prime");
    if (alpha.empty()) throw argument_error("p-sequence: empty");
    for (std::size_t k = 0; k + 1 < alpha.size(); ++k)
        if (alpha[k] <= alpha[k + 1])
            throw argument_error("p-sequence: not strictly decreasing at position " +
                                 std::to_string(k + 1));
    if (alpha.back() != 0) throw argument_error("p-sequence: last term must be 0");
    return PSequence(p, std::move(alpha));
}

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        throw argument_error(std::string("p-sequence: cannot parse ") + what + " from '" +
                             std::string(s) + "'");
    return v;
}

}  // namespace

PSequence PSequence::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw argument_error("p-sequence: expected 'p:a0,a1,...,as', got '" +
                             std::string(text) + "'");
    std::uint64_t p = parse_u64(text.substr(0, colon), "p");
    std::vector<std::uint64_t> alpha;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        alpha.push_back(parse_u64(tok, "sequence entry"));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (alpha.empty()) throw argument_error("p-sequence: no entries");
    return validate(p, std::move(alpha));
}

std::optional<std::size_t> PSequence::degree_as_size() const {
    BigInt d = degree();
    if (d > std::numeric_limits<std::size_t>::max() / 4) return std::nullopt;
    return static_cast<std::size_t>(d);
}

std::string PSequence::to_string() const {
    std::ostringstream os;
    os << p_ << ':';
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        if (k) os << ',';
        os << alpha_[k];
    }
    return os.str();
}

BigInt index_of_tensor_power(const PSequence& seq, std::uint64_t i) {
    return pow_big(seq.p(), index_exponent_of_tensor_power(seq, i));
}

std::uint64_t index_exponent_of_tensor_power(const PSequence& seq, std::uint64_t i) {
    if (i == 0) return 0;
    std::uint64_t k = vp(seq.p(), BigInt(i)).clamped(seq.length());
    return seq.alpha(k);
}

ReducedSequence ReducedSequence::from_parts(std::uint64_t p, std::vector<std::size_t> k,
                                            std::vector<std::uint64_t> value) {
    if (!is_prime(p)) throw argument_error("reduced sequence: p not prime");
    if (k.empty() || k.size() != value.size())
        throw argument_error("reduced sequence: indices and values must match and be nonempty");
    if (k.front() != 0) throw argument_error("reduced sequence: k_0 must be 0");
    for (std::size_t i = 1; i < k.size(); ++i) {
        if (k[i] <= k[i - 1]) throw argument_error("reduced sequence: indices not increasing");
        if (value[i] >= value[i - 1])
            throw argument_error("reduced sequence: values not decreasing");
        // value drop must exceed the index gap
        if (value[i - 1] - value[i] <= k[i] - k[i - 1])
            throw argument_error("reduced sequence: gap inequality fails at i = " +
                                 std::to_string(i));
    }
    return ReducedSequence(p, std::move(k), std::move(value));
}

std::uint64_t ReducedSequence::epsilon(std::size_t i) const {
    if (i < 1 || i > m()) throw argument_error("epsilon: index out of range");
    return value_[i - 1] + k_[i - 1] - k_[i];
}

std::string ReducedSequence::to_string() const {
    std::ostringstream os;
    os << "p=" << p_ << " k=(";
    for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
    os << ") values=(";
    for (std::size_t i = 0; i < value_.size(); ++i) os << (i ? "," : "") << value_[i];
    os << ")";
    return os.str();
}

Reduction reduce(const PSequence& seq) {
    std::vector<std::size_t> k{0};
    std::vector<std::uint64_t> value{seq.alpha0()};
    for (std::size_t i = 1; i < seq.alpha().size(); ++i) {
        if (seq.alpha(i) + 2 <= seq.alpha(i - 1)) {
            k.push_back(i);
            value.push_back(seq.alpha(i));
        }
    }
    if (k.size() == 1) return IndexEqualsExponent{};
    return ReducedSequence::from_parts(seq.p(), std::move(k), std::move(value));
}

std::optional<ReducedSequence> reduced_or_none(const PSequence& seq) {
    Reduction r = reduce(seq);
    if (std::holds_alternative<IndexEqualsExponent>(r)) return std::nullopt;
    return std::get<ReducedSequence>(std::move(r));
}

bool doubly_reduced_sufficient(const ReducedSequence& rs) {
    const std::size_t m = rs.m();
    if (m < 1) throw argument_error("doubly_reduced_sufficient: m must be >= 1");
    return rs.value(m - 1) + rs.value(m) + rs.k(m - 1) >= rs.alpha0();
}

}  // namespace gfl
