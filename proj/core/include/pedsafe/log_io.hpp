#pragma once

#include <string>
#include <vector>

#include "pedsafe/concept_graph.hpp"
#include "pedsafe/session.hpp"

namespace pedsafe {

// Line-delimited session persistence: one header line, one line per step,
// one summary line. Append-only and diff-friendly.
std::string session_to_jsonl(const SessionLog& log, const ConceptGraph& graph);
SessionLog session_from_jsonl(const std::string& text, const ConceptGraph& graph,
                              const std::string& source_name = "<memory>");

// File variants. Writes are atomic (temp file + rename). Read errors name
// the offending file and line.
void write_session_file(const SessionLog& log, const ConceptGraph& graph,
                        const std::string& path);
SessionLog read_session_file(const std::string& path, const ConceptGraph& graph);

// Atomic text-file write used for every emitted artifact.
void write_text_file(const std::string& path, const std::string& content);

// All .jsonl session logs under a directory tree, sorted by path.
std::vector<SessionLog> read_log_directory(const std::string& dir, const ConceptGraph& graph);

}  // namespace pedsafe
