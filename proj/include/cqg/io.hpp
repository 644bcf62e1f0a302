#pragma once

#include <string>

#include "cqg/action.hpp"

namespace cqg {

// Structured-text (JSON) serialization. Complex numbers are two-element
// arrays [re, im]; maps are dense row-major matrices; keys are emitted in
// canonical (sorted) order so output is byte-stable. Loading re-runs the
// residual verification and throws ValidationError (with the report) when
// it fails; malformed documents throw ParseError.

std::string quantum_group_to_text(const FiniteQuantumGroup& g);
void save_quantum_group(const FiniteQuantumGroup& g, const std::string& path);
QuantumGroupPtr quantum_group_from_text(const std::string& text,
                                        const Tolerances& tol = {});
QuantumGroupPtr load_quantum_group(const std::string& path,
                                   const Tolerances& tol = {});

std::string action_to_text(const FiniteAction& act);
void save_action(const FiniteAction& act, const std::string& path);
FiniteAction action_from_text(const std::string& text,
                              const QuantumGroupPtr& group,
                              const Tolerances& tol = {});
FiniteAction load_action(const std::string& path, const QuantumGroupPtr& group,
                         const Tolerances& tol = {});

/// FNV-1a hash of a serialized document, as fixed-width hex.
std::string digest(const std::string& text);

}  // namespace cqg
