#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fairdiv {

enum class Notion { EF, EF1, EFM };

enum class PairStatus { NoEnvy, Witness, Violation };

// Verdict for one ordered pair (envious viewpoint first). `witness` is the
// item whose removal repairs the comparison (EF1, and EFM condition (c));
// `note` explains violations and records the EFM cake conditions.
struct PairVerdict {
    int envious = 0;
    int envied = 0;
    PairStatus status = PairStatus::NoEnvy;
    std::optional<int> witness;
    std::string note;
};

struct FairnessCertificate {
    Notion notion = Notion::EF;
    bool ok = true;
    std::vector<PairVerdict> pairs; // all ordered pairs, lexicographic
};

inline const char* notion_name(Notion n) {
    switch (n) {
        case Notion::EF: return "ef";
        case Notion::EF1: return "ef1";
        default: return "efm";
    }
}

inline std::string to_text(const FairnessCertificate& cert) {
    std::string out = "certificate notion=";
    out += notion_name(cert.notion);
    out += cert.ok ? " ok=true\n" : " ok=false\n";
    for (const auto& p : cert.pairs) {
        out += "pair a" + std::to_string(p.envious + 1) + "->a" + std::to_string(p.envied + 1);
        switch (p.status) {
            case PairStatus::NoEnvy: out += " status=no-envy"; break;
            case PairStatus::Witness: out += " status=witness"; break;
            case PairStatus::Violation: out += " status=violation"; break;
        }
        if (p.witness) out += " witness=c" + std::to_string(*p.witness + 1);
        if (!p.note.empty()) out += " note=" + p.note;
        out += "\n";
    }
    return out;
}

} // namespace fairdiv
