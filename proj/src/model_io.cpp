#include "isorec/model_io.hpp"

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "json.hpp"

#include "isorec/errors.hpp"

namespace isorec {

using nlohmann::json;

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string current_utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void save_model(const std::string& path, const ModelDocument& doc) {
    const Recalibrator& m = doc.model;
    json j;
    j["version"] = kModelFormatVersion;
    j["breakpoints"] = m.breakpoints;
    j["slicing_points"] = m.fit.slicing_points();
    json values = json::array();
    json weights = json::array();
    for (const Block& b : m.fit.blocks) {
        values.push_back(b.value);
        weights.push_back(b.weight);
    }
    j["block_values"] = std::move(values);
    j["block_weights"] = std::move(weights);
    j["complexity"] = m.complexity();
    j["score_range"] = json::array({m.range.first, m.range.second});
    json edits = json::array();
    for (const MergeEdit& e : m.edits) edits.push_back(json{{"merge", e.block_index}});
    j["edits"] = std::move(edits);
    j["metadata"] = json{{"created", doc.metadata.created},
                         {"input_digest", doc.metadata.input_digest},
                         {"tool_version", doc.metadata.tool_version}};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }

    try {
        if (j.at("version").get<int>() != kModelFormatVersion)
            throw ParseError("'" + path + "' has unsupported model format version");

        ModelDocument doc;
        Recalibrator& m = doc.model;
        m.breakpoints = j.at("breakpoints").get<std::vector<double>>();
        const auto slicing = j.at("slicing_points").get<std::vector<std::size_t>>();
        const auto values = j.at("block_values").get<std::vector<double>>();
        const auto weights = j.at("block_weights").get<std::vector<double>>();
        if (slicing.size() < 2 || values.size() + 1 != slicing.size() ||
            weights.size() != values.size())
            throw ParseError("'" + path + "' has inconsistent block arrays");

        m.fit.n = slicing.back();
        for (std::size_t k = 0; k + 1 < slicing.size(); ++k)
            m.fit.blocks.push_back(Block{slicing[k], slicing[k + 1], values[k], weights[k]});

        const auto range = j.at("score_range").get<std::vector<double>>();
        if (range.size() != 2) throw ParseError("'" + path + "' score_range needs two entries");
        m.range = {range[0], range[1]};

        for (const auto& e : j.at("edits"))
            m.edits.push_back(MergeEdit{e.at("merge").get<std::size_t>()});

        if (j.at("complexity").get<std::size_t>() != m.complexity())
            throw ParseError("'" + path + "' complexity disagrees with block count");
        if (m.breakpoints.size() != m.fit.n)
            throw ParseError("'" + path + "' breakpoint count disagrees with slicing points");
        for (std::size_t i = 1; i < m.breakpoints.size(); ++i) {
            if (!(m.breakpoints[i - 1] < m.breakpoints[i]))
                throw ParseError("'" + path + "' breakpoints must be strictly increasing");
        }
        m.fit.check_invariants();

        const auto& meta = j.at("metadata");
        doc.metadata.created = meta.at("created").get<std::string>();
        doc.metadata.input_digest = meta.at("input_digest").get<std::string>();
        doc.metadata.tool_version = meta.at("tool_version").get<std::string>();
        return doc;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "' does not match the model schema: " + e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError("'" + path + "' fails model validation: " + e.what());
    }
}

}  // namespace isorec
