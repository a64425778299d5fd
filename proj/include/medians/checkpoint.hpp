#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace medians {

struct CheckpointError : std::runtime_error {
    explicit CheckpointError(const std::string& what) : std::runtime_error(what) {}
};

/// Content hash mismatch: the file is truncated or tampered with. Callers
/// must surface this as corrupt state, never fall back to a fresh run.
struct CheckpointCorrupt : CheckpointError {
    explicit CheckpointCorrupt(const std::string& what) : CheckpointError(what) {}
};

/// Persistent state of a partially completed search: which work units are
/// done, and the per-unit scanned counts and witness lines needed to finish
/// the run with a result identical to an uninterrupted one.
struct Checkpoint {
    int format_version = 1;
    std::string target;
    long height = 0;
    long unit_size = 0;
    long n_units = 0;
    std::vector<bool> done;
    std::map<long, long> unit_scanned;
    std::map<long, std::vector<std::string>> unit_witnesses;
};

std::string sha256_hex(const std::string& bytes);

/// Text form: versioned header, completed-unit bitmap, per-unit scanned
/// counts and witness lines, then a content hash of everything above it.
std::string serialize_checkpoint(const Checkpoint& c);

/// Throws CheckpointError on malformed input and CheckpointCorrupt when the
/// trailing hash does not match the bytes above it.
Checkpoint parse_checkpoint(const std::string& text);

/// Atomic: writes to a temp file in the same directory, then renames.
void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

} // namespace medians
