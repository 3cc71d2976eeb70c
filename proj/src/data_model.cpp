#include "sigtest/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "sigtest/errors.hpp"

namespace sigtest {

namespace {

constexpr const char* kCountFields[] = {"c_both", "c_only1", "c_only2", "miss_both",
                                        "s_both", "s_only1", "s_only2", "total_of_interest"};

std::int64_t* field_slot(ResponseCounts& c, std::string_view name) {
    if (name == "c_both") return &c.c_both;
    if (name == "c_only1") return &c.c_only1;
    if (name == "c_only2") return &c.c_only2;
    if (name == "miss_both") return &c.miss_both;
    if (name == "s_both") return &c.s_both;
    if (name == "s_only1") return &c.s_only1;
    if (name == "s_only2") return &c.s_only2;
    if (name == "total_of_interest") return &c.total_of_interest;
    return nullptr;
}

bool parse_flag(std::string_view field, bool& out) {
    if (field == "0") {
        out = false;
        return true;
    }
    if (field == "1") {
        out = true;
        return true;
    }
    return false;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

// Fills in whichever of miss_both / total_of_interest was not supplied.
void complete_totals(ResponseCounts& c, bool has_miss, bool has_total) {
    const std::int64_t recalled_any = c.c_both + c.c_only1 + c.c_only2;
    if (has_miss && !has_total) {
        c.total_of_interest = recalled_any + c.miss_both;
    } else if (!has_miss && has_total) {
        c.miss_both = c.total_of_interest - recalled_any;
    } else if (!has_miss && !has_total) {
        c.miss_both = 0;
        c.total_of_interest = recalled_any;
        c.total_known = false;
    }
}

}  // namespace

double PairedOutcomes::mean1() const {
    return y1.empty() ? 0.0 : static_cast<double>(std::accumulate(y1.begin(), y1.end(), 0)) / y1.size();
}

double PairedOutcomes::mean2() const {
    return y2.empty() ? 0.0 : static_cast<double>(std::accumulate(y2.begin(), y2.end(), 0)) / y2.size();
}

std::vector<double> PairedOutcomes::differences() const {
    std::vector<double> d(y1.size());
    for (std::size_t k = 0; k < y1.size(); ++k) d[k] = static_cast<double>(y1[k]) - static_cast<double>(y2[k]);
    return d;
}

void ResponseCounts::validate() const {
    const std::int64_t values[] = {c_both, c_only1, c_only2, miss_both, s_both, s_only1, s_only2, total_of_interest};
    for (std::size_t i = 0; i < std::size(values); ++i)
        if (values[i] < 0) throw InputError(std::string("count ") + kCountFields[i] + " is negative");
    if (total_known) {
        if (total_of_interest < 1) throw InputError("total_of_interest must be positive");
        if (c_both + c_only1 + c_only2 + miss_both != total_of_interest)
            throw InputError("c_both + c_only1 + c_only2 + miss_both != total_of_interest");
    }
}

ResponseCounts ResponseCounts::swapped() const {
    ResponseCounts s = *this;
    std::swap(s.c_only1, s.c_only2);
    std::swap(s.s_only1, s.s_only2);
    return s;
}

std::vector<DetailRecord> parse_detail_stream(std::istream& in, std::string_view source) {
    std::vector<DetailRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 4) fail("expected 4 tab-separated fields, got " + std::to_string(fields.size()));
        DetailRecord rec;
        rec.item_id = std::string(fields[0]);
        if (rec.item_id.empty()) fail("empty item_id");
        if (!parse_flag(fields[1], rec.of_interest) || !parse_flag(fields[2], rec.found_by_1) ||
            !parse_flag(fields[3], rec.found_by_2))
            fail("flags must be 0 or 1");
        if (!rec.of_interest && !rec.found_by_1 && !rec.found_by_2)
            fail("spurious response '" + rec.item_id + "' is not found by either system");
        if (!seen.insert(rec.item_id).second) fail("duplicate item_id '" + rec.item_id + "'");
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw InputError(std::string(source) + ": no records");
    return records;
}

std::vector<DetailRecord> parse_detail_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_detail_stream(in, path.string());
}

void write_detail_stream(std::ostream& out, const std::vector<DetailRecord>& records) {
    out << "# item_id\tof_interest\tfound_by_1\tfound_by_2\n";
    for (const auto& r : records)
        out << r.item_id << '\t' << int(r.of_interest) << '\t' << int(r.found_by_1) << '\t' << int(r.found_by_2)
            << '\n';
}

ResponseCounts summarize(const std::vector<DetailRecord>& records) {
    ResponseCounts c;
    for (const auto& r : records) {
        if (r.of_interest) {
            ++c.total_of_interest;
            if (r.found_by_1 && r.found_by_2) ++c.c_both;
            else if (r.found_by_1) ++c.c_only1;
            else if (r.found_by_2) ++c.c_only2;
            else ++c.miss_both;
        } else {
            if (r.found_by_1 && r.found_by_2) ++c.s_both;
            else if (r.found_by_1) ++c.s_only1;
            else if (r.found_by_2) ++c.s_only2;
            else throw InputError("spurious response '" + r.item_id + "' is not found by either system");
        }
    }
    return c;
}

PairedOutcomes to_paired_outcomes(const std::vector<DetailRecord>& records) {
    PairedOutcomes p;
    for (const auto& r : records) {
        if (!r.of_interest) continue;
        p.y1.push_back(r.found_by_1 ? 1 : 0);
        p.y2.push_back(r.found_by_2 ? 1 : 0);
    }
    if (p.y1.empty()) throw InputError("no items of interest");
    return p;
}

PairedOutcomes to_paired_outcomes(const ResponseCounts& counts) {
    if (!counts.total_known) throw InputError("paired outcomes need miss_both / total_of_interest");
    if (counts.total_of_interest < 1) throw InputError("no items of interest");
    PairedOutcomes p;
    auto push = [&](std::int64_t n, std::uint8_t a, std::uint8_t b) {
        for (std::int64_t k = 0; k < n; ++k) {
            p.y1.push_back(a);
            p.y2.push_back(b);
        }
    };
    push(counts.c_both, 1, 1);
    push(counts.c_only1, 1, 0);
    push(counts.c_only2, 0, 1);
    push(counts.miss_both, 0, 0);
    return p;
}

std::vector<DetailRecord> records_from_counts(const ResponseCounts& counts) {
    std::vector<DetailRecord> out;
    std::int64_t g = 0, s = 0;
    auto add = [&](std::int64_t n, bool interest, bool f1, bool f2) {
        for (std::int64_t k = 0; k < n; ++k)
            out.push_back({(interest ? "g" + std::to_string(g++) : "s" + std::to_string(s++)), interest, f1, f2});
    };
    add(counts.c_both, true, true, true);
    add(counts.c_only1, true, true, false);
    add(counts.c_only2, true, false, true);
    add(counts.miss_both, true, false, false);
    add(counts.s_both, false, true, true);
    add(counts.s_only1, false, true, false);
    add(counts.s_only2, false, false, true);
    return out;
}

ResponseCounts counts_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("counts JSON must be an object");
    ResponseCounts c;
    bool has_miss = false, has_total = false;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto* slot = field_slot(c, it.key());
        if (slot == nullptr) throw InputError("unknown counts field '" + it.key() + "'");
        if (!it.value().is_number_integer()) throw InputError("counts field '" + it.key() + "' must be an integer");
        *slot = it.value().get<std::int64_t>();
        if (it.key() == "miss_both") has_miss = true;
        if (it.key() == "total_of_interest") has_total = true;
    }
    for (auto name : {"c_both", "c_only1", "c_only2", "s_both", "s_only1", "s_only2"})
        if (!j.contains(name)) throw InputError(std::string("counts JSON missing '") + name + "'");
    complete_totals(c, has_miss, has_total);
    c.validate();
    return c;
}

nlohmann::json counts_to_json(const ResponseCounts& counts) {
    nlohmann::json j;
    j["c_both"] = counts.c_both;
    j["c_only1"] = counts.c_only1;
    j["c_only2"] = counts.c_only2;
    if (counts.total_known) j["miss_both"] = counts.miss_both;
    j["s_both"] = counts.s_both;
    j["s_only1"] = counts.s_only1;
    j["s_only2"] = counts.s_only2;
    if (counts.total_known) j["total_of_interest"] = counts.total_of_interest;
    return j;
}

ResponseCounts counts_from_inline(std::string_view text) {
    nlohmann::json j = nlohmann::json::object();
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        auto item = text.substr(start, end - start);
        if (!item.empty()) {
            auto eq = item.find('=');
            if (eq == std::string_view::npos) throw InputError("inline counts: expected key=value, got '" + std::string(item) + "'");
            auto key = std::string(item.substr(0, eq));
            auto val = item.substr(eq + 1);
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
            if (ec != std::errc{} || ptr != val.data() + val.size())
                throw InputError("inline counts: bad integer for '" + key + "'");
            j[key] = v;
        }
        start = end + 1;
    }
    return counts_from_json(j);
}

}  // namespace sigtest
