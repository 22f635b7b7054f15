// SPDX-License-Identifier: Apache-2.0
//
// Code-description document:
//
//   {
//     "version": 1,
//     "k": 2,
//     "r": 4,
//     "b_matrices": [["0100", "1000", "0001", "0010"], ...],   // k+1 matrices, row strings
//     "strategies": [{"q_rows": [1, 3], "basic_rows": [1, 3]}, ...]   // optional
//   }
//
// Row strings hold '0'/'1', leftmost character is column 1. Indices are 1-based.

#ifndef MDR_CODE_IO_HPP
#define MDR_CODE_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mdr/code.hpp"

namespace mdr {

inline constexpr int kCodeDocumentVersion = 1;

nlohmann::json code_to_json(const MdrCode& code);

/// Parses and validates: the code must pass verify_mds, and when strategies
/// are present they must pass verify_repair_optimal. Throws Errc::integrity
/// on a code that fails either check, Errc::invalid_argument on malformed input.
MdrCode code_from_json(const nlohmann::json& doc);

std::string dump_code(const MdrCode& code);
MdrCode parse_code(const std::string& text);

MdrCode load_code(const std::filesystem::path& path);
void save_code(const MdrCode& code, const std::filesystem::path& path);

}  // namespace mdr

#endif
