// SPDX-License-Identifier: Apache-2.0

#include "mdr/code_io.hpp"

#include <fstream>
#include <sstream>

#include "mdr/error.hpp"

namespace mdr {

using nlohmann::json;

json code_to_json(const MdrCode& code) {
    json doc;
    doc["version"] = kCodeDocumentVersion;
    doc["k"] = code.k();
    doc["r"] = code.r();
    json mats = json::array();
    for (const auto& b : code.b_matrices()) mats.push_back(b.to_strings());
    doc["b_matrices"] = std::move(mats);
    if (code.has_strategies()) {
        json strategies = json::array();
        for (const auto& s : code.strategies()) {
            strategies.push_back({{"q_rows", s.q_rows.members()}, {"basic_rows", s.basic_rows.members()}});
        }
        doc["strategies"] = std::move(strategies);
    }
    return doc;
}

MdrCode code_from_json(const json& doc) {
    MdrCode code = [&doc] {
        try {
            if (doc.at("version").get<int>() != kCodeDocumentVersion) {
                throw Error(Errc::invalid_argument, "code document: unsupported version");
            }
            const auto k = doc.at("k").get<std::size_t>();
            const auto r = doc.at("r").get<std::size_t>();
            std::vector<BitMatrix> b;
            for (const auto& m : doc.at("b_matrices")) {
                b.push_back(BitMatrix::from_strings(m.get<std::vector<std::string>>()));
                if (b.back().rows() != r) throw Error(Errc::invalid_argument, "code document: matrix size differs from r");
            }
            std::vector<RepairStrategy> s;
            if (doc.contains("strategies")) {
                for (const auto& e : doc.at("strategies")) {
                    s.push_back({IndexSet(r, e.at("q_rows").get<std::vector<std::size_t>>()),
                                 IndexSet(r, e.at("basic_rows").get<std::vector<std::size_t>>())});
                }
            }
            return MdrCode(k, std::move(b), std::move(s));
        } catch (const json::exception& e) {
            throw Error(Errc::invalid_argument, std::string("code document: ") + e.what());
        }
    }();
    if (!verify_mds(code)) throw Error(Errc::integrity, "code document: code is not MDS");
    if (code.has_strategies() && !verify_repair_optimal(code)) {
        throw Error(Errc::integrity, "code document: repair strategies fail the optimal-repair conditions");
    }
    return code;
}

std::string dump_code(const MdrCode& code) { return code_to_json(code).dump(2) + "\n"; }

MdrCode parse_code(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_argument, std::string("code document: ") + e.what());
    }
    return code_from_json(doc);
}

MdrCode load_code(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str());
}

void save_code(const MdrCode& code, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot write " + path.string());
    out << dump_code(code);
}

}  // namespace mdr
