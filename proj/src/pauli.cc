// Copyright 2026 The qnetlab Authors
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

#include "qnetlab/outcome.h"
#include "qnetlab/pauli.h"

using namespace qnetlab;

std::string_view PauliCorrection::name() const {
    if (x) {
        return z ? "ZX" : "X";
    }
    return z ? "Z" : "I";
}

std::optional<PauliCorrection> PauliCorrection::from_name(std::string_view name) {
    for (auto p : kAllPaulis) {
        if (p.name() == name) {
            return p;
        }
    }
    if (name == "XZ") {
        return pauli_zx();
    }
    return std::nullopt;
}

std::string_view qnetlab::outcome_name(OutcomeLabel label) {
    switch (label) {
        case OutcomeLabel::PhiPlus:
            return "phi+";
        case OutcomeLabel::PhiMinus:
            return "phi-";
        case OutcomeLabel::PsiPlus:
            return "psi+";
        case OutcomeLabel::PsiMinus:
            return "psi-";
        case OutcomeLabel::Plus:
            return "+";
        case OutcomeLabel::Minus:
            return "-";
    }
    return "?";
}

std::optional<OutcomeLabel> qnetlab::parse_outcome(std::string_view name) {
    for (auto label : {OutcomeLabel::PhiPlus, OutcomeLabel::PhiMinus, OutcomeLabel::PsiPlus,
                       OutcomeLabel::PsiMinus, OutcomeLabel::Plus, OutcomeLabel::Minus}) {
        if (outcome_name(label) == name) {
            return label;
        }
    }
    return std::nullopt;
}

std::string qnetlab::outcome_bits(OutcomeLabel label) {
    if (is_bell(label)) {
        auto b = bell_bits(label);
        return std::string{b.x ? '1' : '0', b.z ? '1' : '0'};
    }
    return label == OutcomeLabel::Plus ? "0" : "1";
}
