#pragma once

// Versioned line-oriented text formats for instances, certificates, rakes,
// and adversary transcripts. Writers emit canonical bytes (golden tests rely
// on byte determinism); parsers are strict and throw parse_error.

#include <string>

#include "rakelab/diagonal.hpp"

namespace rakelab {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_cert(const ProblemId& pid, const SolutionCert& cert);
SolutionCert parse_cert(const std::string& text, ProblemId* pid_out = nullptr);

std::string serialize_rake(const FiniteRake& rake);
FiniteRake parse_rake(const std::string& text);

std::string serialize_transcript(const AdversaryTranscript& t);

/// One-line summaries for reports and traces.
std::string describe_cert(const SolutionCert& cert);
std::string describe_instance(const Instance& inst);

/// TreeSets as sorted arrays of quoted 0/1 words, "" for the empty string.
std::string treeset_to_text(const TreeSet& s);
TreeSet treeset_from_text(const std::string& text);

}  // namespace rakelab
