// SPDX-License-Identifier: Apache-2.0

#ifndef MDR_ERROR_HPP
#define MDR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mdr {

enum class Errc {
    invalid_argument,
    dimension_mismatch,
    singular,
    out_of_range,
    precondition,
    integrity,      // parity relations violated by present blocks
    unrecoverable,  // more erasures than the code tolerates
    missing_block,
    io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mdr

#endif
