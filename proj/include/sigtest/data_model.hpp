#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sigtest {

enum class System { first = 1, second = 2 };

/// One line of a detail file: an item of interest (gold) or a spurious
/// response, with which systems produced it.
struct DetailRecord {
    std::string item_id;
    bool of_interest = false;
    bool found_by_1 = false;
    bool found_by_2 = false;

    friend bool operator==(const DetailRecord&, const DetailRecord&) = default;
};

/// Per-item binary outcomes on the items of interest: y1[k] is 1 iff
/// system 1 recalled item k.
struct PairedOutcomes {
    std::vector<std::uint8_t> y1;
    std::vector<std::uint8_t> y2;

    std::size_t size() const { return y1.size(); }
    double mean1() const;
    double mean2() const;
    /// Per-item differences y1[k] - y2[k].
    std::vector<double> differences() const;
};

/// Seven-count summary of two systems' responses plus the number of items
/// of interest. Every test in this library is a function of these counts
/// or of the PairedOutcomes derived from them.
struct ResponseCounts {
    std::int64_t c_both = 0;
    std::int64_t c_only1 = 0;
    std::int64_t c_only2 = 0;
    std::int64_t miss_both = 0;
    std::int64_t s_both = 0;
    std::int64_t s_only1 = 0;
    std::int64_t s_only2 = 0;
    std::int64_t total_of_interest = 0;
    /// False when the counts came without miss_both/total_of_interest, in
    /// which case recall denominators are unknown.
    bool total_known = true;

    std::int64_t recalled(System s) const { return c_both + (s == System::first ? c_only1 : c_only2); }
    std::int64_t spurious(System s) const { return s_both + (s == System::first ? s_only1 : s_only2); }
    std::int64_t responses(System s) const { return recalled(s) + spurious(s); }

    /// Throws InputError when the invariants do not hold.
    void validate() const;

    /// Same data with the system labels exchanged.
    ResponseCounts swapped() const;

    friend bool operator==(const ResponseCounts&, const ResponseCounts&) = default;
};

std::vector<DetailRecord> parse_detail_stream(std::istream& in, std::string_view source = "<stream>");
std::vector<DetailRecord> parse_detail_file(const std::filesystem::path& path);
void write_detail_stream(std::ostream& out, const std::vector<DetailRecord>& records);

ResponseCounts summarize(const std::vector<DetailRecord>& records);
PairedOutcomes to_paired_outcomes(const std::vector<DetailRecord>& records);
PairedOutcomes to_paired_outcomes(const ResponseCounts& counts);

/// Canonical record set for a summary: one record per counted item, ids
/// "g<k>" for items of interest and "s<k>" for spurious responses.
std::vector<DetailRecord> records_from_counts(const ResponseCounts& counts);

/// Counts JSON: the eight field names as keys. miss_both or
/// total_of_interest may be omitted (one is derived from the other); when
/// both are missing total_known is false.
ResponseCounts counts_from_json(const nlohmann::json& j);
nlohmann::json counts_to_json(const ResponseCounts& counts);

/// Inline form "c_both=19,c_only1=28,...".
ResponseCounts counts_from_inline(std::string_view text);

}  // namespace sigtest
