// Copyright 2026 The hqnn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Classical-to-quantum feature maps: basis, angle and amplitude encoding.
 */
#pragma once

#include "hqnn/circuit.hpp"
#include "hqnn/statevector.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hqnn {

enum class EncodingScheme { Basis, Angle, Amplitude };
enum class RotationAxis { X, Y, Z };

struct EncodingSpec {
    EncodingScheme scheme = EncodingScheme::Angle;
    RotationAxis axis = RotationAxis::Y; ///< Angle scheme only
    std::size_t n_wires = 1;
};

using Bitstring = std::vector<std::uint8_t>;

/**
 * @brief Uniform superposition over the distinct input bitstrings.
 *
 * Bit 0 of each string is wire 0. Duplicates collapse to one term so the
 * result stays normalized.
 */
[[nodiscard]] StateVector basis_encode(const std::vector<Bitstring> &bitstrings);

/// Parses strings such as "001" and forwards to the Bitstring overload.
[[nodiscard]] StateVector basis_encode(const std::vector<std::string> &bitstrings);

/**
 * @brief One rotation R_axis(x_i) on wire i per feature, angles fixed.
 *
 * With the Z axis each rotation is preceded by a Hadamard. Wires beyond
 * len(x) are untouched.
 */
[[nodiscard]] CircuitProgram angle_encode(std::span<const double> x,
                                          const EncodingSpec &spec);

/// Same gate layout as angle_encode with feature i bound to slot i.
[[nodiscard]] CircuitProgram angle_encoding_layer(const EncodingSpec &spec,
                                                  std::size_t n_features);

/// amps_i = x_i / ||x||, zero-padded to 2^n_wires.
[[nodiscard]] StateVector amplitude_encode(std::span<const double> x,
                                           std::size_t n_wires);

} // namespace hqnn
