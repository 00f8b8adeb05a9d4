// Copyright 2026 The errtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace errtel {

using QubitId = uint32_t;

/// Single-qubit Pauli, encoded as (x bit) | (z bit << 1).
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr bool has_x(Pauli p) {
    return (static_cast<uint8_t>(p) & 1) != 0;
}
inline constexpr bool has_z(Pauli p) {
    return (static_cast<uint8_t>(p) & 2) != 0;
}
inline constexpr Pauli pauli_from_bits(bool x, bool z) {
    return static_cast<Pauli>(static_cast<uint8_t>(x) | (static_cast<uint8_t>(z) << 1));
}
char pauli_char(Pauli p);

inline constexpr size_t words_for_bits(size_t n) {
    return (n + 63) / 64;
}

/// An n-qubit Pauli operator: bit-packed X and Z parts plus a sign.
///
/// Qubit q carries X if x bit q is set, Z if z bit q is set, and the Hermitian
/// Y if both are set. The represented operator is (-1)^sign times the tensor
/// product of those single-qubit factors.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses strings like "+XZ_I", "-YY" or "XIZ". '_' and 'I' both mean identity.
    static PauliString from_str(std::string_view text);
    /// A single-qubit Pauli p on qubit q, identity elsewhere.
    static PauliString single(size_t num_qubits, QubitId q, Pauli p);

    size_t num_qubits() const {
        return num_qubits_;
    }
    Pauli get(QubitId q) const;
    void set(QubitId q, Pauli p);
    bool negative() const {
        return negative_;
    }
    void set_negative(bool negative) {
        negative_ = negative;
    }
    int sign() const {
        return negative_ ? -1 : +1;
    }

    std::span<uint64_t> xs() {
        return xs_;
    }
    std::span<uint64_t> zs() {
        return zs_;
    }
    std::span<const uint64_t> xs() const {
        return xs_;
    }
    std::span<const uint64_t> zs() const {
        return zs_;
    }

    size_t weight() const;
    bool is_identity() const;
    bool commutes(const PauliString &other) const;

    /// this <- this * rhs. Returns the exponent k (mod 4) such that the exact
    /// operator product equals i^(k & 1) times the stored string; the sign bit
    /// absorbs the real part (k & 2).
    uint8_t inplace_right_mul(const PauliString &rhs);

    /// The same Pauli string with the sign cleared.
    PauliString unsigned_copy() const;

    std::string str() const;

    bool operator==(const PauliString &other) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    bool negative_ = false;
};

/// Product of two commuting Pauli strings. Throws std::invalid_argument if
/// they anticommute, since the product would not be Hermitian.
PauliString operator*(const PauliString &a, const PauliString &b);

namespace detail {

/// Phase bookkeeping shared by PauliString and the tableau rows.
/// Right-multiplies (x1, z1) by (x2, z2) in place and returns the log_i of
/// the product's scalar, excluding the input signs.
uint8_t mul_words_log_i(
    std::span<uint64_t> x1, std::span<uint64_t> z1, std::span<const uint64_t> x2, std::span<const uint64_t> z2);

/// Parity of the symplectic inner product; true iff the strings anticommute.
bool anticommute_words(
    std::span<const uint64_t> x1, std::span<const uint64_t> z1, std::span<const uint64_t> x2,
    std::span<const uint64_t> z2);

}  // namespace detail

}  // namespace errtel
