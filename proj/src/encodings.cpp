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

#include "hqnn/encodings.hpp"

#include "hqnn/error.hpp"

#include <cmath>
#include <set>

namespace hqnn {

StateVector basis_encode(const std::vector<Bitstring> &bitstrings) {
    require(!bitstrings.empty(), "basis_encode needs at least one bitstring");
    const std::size_t len = bitstrings.front().size();
    require(len >= 1, "bitstrings must be non-empty");
    std::set<std::size_t> indices;
    for (const auto &bits : bitstrings) {
        require(bits.size() == len, "bitstrings have ragged lengths");
        std::size_t index = 0;
        for (const auto b : bits) {
            require(b <= 1, "bitstring entries must be 0 or 1");
            index = (index << 1U) | b;
        }
        indices.insert(index);
    }
    auto state = StateVector::zero(len);
    std::vector<complex_t> amps(state.size());
    const double amp = 1.0 / std::sqrt(static_cast<double>(indices.size()));
    for (const auto i : indices) {
        amps[i] = amp;
    }
    return StateVector::from_amplitudes(len, std::move(amps));
}

StateVector basis_encode(const std::vector<std::string> &bitstrings) {
    std::vector<Bitstring> parsed;
    parsed.reserve(bitstrings.size());
    for (const auto &s : bitstrings) {
        Bitstring bits;
        for (const char c : s) {
            require(c == '0' || c == '1', "invalid bit character in \"" + s + "\"");
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        parsed.push_back(std::move(bits));
    }
    return basis_encode(parsed);
}

namespace {

GateKind rotation_for(RotationAxis axis) {
    switch (axis) {
    case RotationAxis::X:
        return GateKind::RX;
    case RotationAxis::Z:
        return GateKind::RZ;
    default:
        return GateKind::RY;
    }
}

CircuitProgram build_angle_layer(const EncodingSpec &spec, std::size_t n,
                                 std::span<const double> values) {
    require(spec.scheme == EncodingScheme::Angle,
            "angle encoding requires an Angle encoding spec");
    require(n <= spec.n_wires, "angle encoding of " + std::to_string(n) +
                                   " features needs at least as many wires, got " +
                                   std::to_string(spec.n_wires));
    CircuitProgram program(spec.n_wires);
    const GateKind kind = rotation_for(spec.axis);
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.axis == RotationAxis::Z) {
            program.add(GateKind::H, {i});
        }
        if (values.empty()) {
            program.add(kind, {i}, {Slot{i}});
        } else {
            require(std::isfinite(values[i]),
                    "feature " + std::to_string(i) + " is not finite");
            program.add(kind, {i}, {values[i]});
        }
    }
    return program;
}

} // namespace

CircuitProgram angle_encode(std::span<const double> x, const EncodingSpec &spec) {
    if (x.empty()) {
        require(spec.scheme == EncodingScheme::Angle,
                "angle encoding requires an Angle encoding spec");
        return CircuitProgram(spec.n_wires);
    }
    return build_angle_layer(spec, x.size(), x);
}

CircuitProgram angle_encoding_layer(const EncodingSpec &spec,
                                    std::size_t n_features) {
    auto program = build_angle_layer(spec, n_features, {});
    program.reserve_params(n_features);
    return program;
}

StateVector amplitude_encode(std::span<const double> x, std::size_t n_wires) {
    require(n_wires >= 1 && n_wires <= kDefaultMaxQubits,
            "amplitude encoding wire count out of range");
    const std::size_t dim = std::size_t{1} << n_wires;
    require(x.size() <= dim, std::to_string(x.size()) +
                                 " features do not fit in 2^" +
                                 std::to_string(n_wires) + " amplitudes");
    double norm2 = 0.0;
    for (const double v : x) {
        require(std::isfinite(v), "amplitude encoding of a non-finite feature");
        norm2 += v * v;
    }
    require(norm2 > 0.0, "amplitude encoding of an all-zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<complex_t> amps(dim);
    for (std::size_t i = 0; i < x.size(); ++i) {
        amps[i] = x[i] * inv;
    }
    return StateVector::from_amplitudes(n_wires, std::move(amps));
}

} // namespace hqnn
