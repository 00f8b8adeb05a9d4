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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errtel/graph_topology.h"
#include "errtel/pauli_string.h"
#include "errtel/rng.h"

namespace errtel {

enum class Basis : uint8_t { X, Z };

struct QubitStatus {
    enum class Kind : uint8_t { Active, MeasuredZ, MeasuredX, Lost };
    Kind kind = Kind::Active;
    /// +1 or -1 for measured qubits, 0 otherwise.
    int outcome = 0;

    bool active() const {
        return kind == Kind::Active;
    }
    bool operator==(const QubitStatus &) const = default;
};

struct MeasurementOutcome {
    QubitId qubit = 0;
    Basis basis = Basis::Z;
    /// Raw outcome, +1 or -1.
    int value = +1;
    bool deterministic = false;
    /// Outcome with the frame (as it stood before this measurement) removed.
    /// Deterministic: the reference trajectory's value. Random: the reference
    /// shows +1, and -1 here means a byproduct was booked into the frame.
    int frame_value = +1;
};

/// Stabilizer state of n qubits in Aaronson-Gottesman form.
///
/// Rows [0, n) hold destabilizers and rows [n, 2n) the stabilizer generators.
/// Random measurement outcomes come from a caller-supplied Rng; the byproduct
/// corrections they imply are accumulated in pauli_frame() instead of being
/// applied, so the tableau always holds the actual post-measurement state and
/// pauli_frame() * |reference> equals it, where the reference trajectory is the
/// one in which every random outcome came out +1 after frame correction.
///
/// Not thread-safe; independent instances may live on different threads.
class StabilizerTableau {
   public:
    /// |+>^n: stabilizers X_i, destabilizers Z_i.
    explicit StabilizerTableau(size_t num_qubits);

    /// Graph state with generators S_i = X_i prod_{j in v(i)} Z_j.
    static StabilizerTableau graph_state(const GraphTopology &topology);

    size_t num_qubits() const {
        return n_;
    }

    void apply_cz(QubitId a, QubitId b);
    void apply_pauli(const PauliString &p);
    void apply_pauli(QubitId q, Pauli p);

    MeasurementOutcome measure(QubitId q, Basis basis, Rng &rng);
    /// Like measure, but a random outcome is resolved to `preferred` (+1/-1)
    /// instead of drawing from an Rng. Deterministic outcomes ignore it.
    MeasurementOutcome measure_forced(QubitId q, Basis basis, int preferred);
    /// True iff measuring q in `basis` now would be random.
    bool is_random(QubitId q, Basis basis) const;

    /// Heralded loss: a uniformly random Pauli (full depolarization) followed
    /// by discarding the qubit, realized as an unrecorded Z measurement that
    /// decouples it. Downstream statistics equal those of the partial trace.
    void mark_lost(QubitId q, Rng &rng);

    /// +1/-1 if `p` (sign included) has a definite value in this state, else nullopt.
    std::optional<int> expectation(const PauliString &p) const;

    const QubitStatus &status(QubitId q) const {
        return status_.at(q);
    }
    const PauliString &pauli_frame() const {
        return frame_;
    }
    void clear_pauli_frame();

    PauliString generator(size_t k) const;
    std::vector<PauliString> generators() const;

    /// Unique reduced row echelon form of the stabilizer group (columns ordered
    /// x0, z0, x1, z1, ...). Equal iff the groups are equal.
    std::vector<PauliString> canonical_form() const;
    /// Canonical form of the subgroup supported on `keep`. Meaningful when the
    /// other qubits are in product states (measured or lost).
    std::vector<PauliString> canonical_form_on(std::span<const QubitId> keep) const;

    bool generators_commute() const;
    size_t generator_rank() const;

    /// One stabilizer generator per line, e.g. "+XZII".
    std::string str() const;

   private:
    std::span<uint64_t> xrow(size_t r) {
        return {xs_.data() + r * words_, words_};
    }
    std::span<uint64_t> zrow(size_t r) {
        return {zs_.data() + r * words_, words_};
    }
    std::span<const uint64_t> xrow(size_t r) const {
        return {xs_.data() + r * words_, words_};
    }
    std::span<const uint64_t> zrow(size_t r) const {
        return {zs_.data() + r * words_, words_};
    }
    bool xbit(size_t r, QubitId q) const {
        return (xs_[r * words_ + (q >> 6)] >> (q & 63)) & 1;
    }
    bool zbit(size_t r, QubitId q) const {
        return (zs_[r * words_ + (q >> 6)] >> (q & 63)) & 1;
    }
    bool row_anticommutes(size_t r, QubitId q, Basis basis) const {
        return basis == Basis::Z ? xbit(r, q) : zbit(r, q);
    }
    PauliString row(size_t r) const;
    void set_row(size_t r, const PauliString &p);
    void row_mul(size_t target, size_t source);
    void require_active(QubitId q, const char *what) const;

    MeasurementOutcome measure_impl(QubitId q, Basis basis, Rng *rng, int preferred, bool track_frame);

    size_t n_;
    size_t words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> signs_;
    std::vector<QubitStatus> status_;
    PauliString frame_;
};

}  // namespace errtel
