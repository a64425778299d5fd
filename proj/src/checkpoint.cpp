#include "medians/checkpoint.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace medians {

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256: digest failure");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

std::string serialize_checkpoint(const Checkpoint& c) {
    std::ostringstream body;
    body << "medians-checkpoint " << c.format_version << "\n";
    body << "target " << c.target << "\n";
    body << "height " << c.height << "\n";
    body << "unit-size " << c.unit_size << "\n";
    body << "units " << c.n_units << "\n";
    body << "done ";
    for (bool b : c.done) body << (b ? '1' : '0');
    body << "\n";
    for (const auto& [idx, count] : c.unit_scanned) body << "scanned " << idx << " " << count << "\n";
    for (const auto& [idx, ws] : c.unit_witnesses)
        for (const auto& w : ws) body << "witness " << idx << " " << w << "\n";
    std::string text = body.str();
    return text + "hash " + sha256_hex(text) + "\n";
}

Checkpoint parse_checkpoint(const std::string& text) {
    auto fail = [](const std::string& why) -> Checkpoint {
        throw CheckpointError("checkpoint parse error: " + why);
    };

    size_t hash_pos = text.rfind("hash ");
    if (hash_pos == std::string::npos || (hash_pos != 0 && text[hash_pos - 1] != '\n'))
        return fail("missing hash line");
    std::string body = text.substr(0, hash_pos);
    std::string stored = text.substr(hash_pos + 5);
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
    if (sha256_hex(body) != stored)
        throw CheckpointCorrupt("checkpoint content hash mismatch");

    Checkpoint c;
    std::istringstream in(body);
    std::string line;
    bool saw_magic = false, saw_done = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "medians-checkpoint") {
            if (!(ls >> c.format_version) || c.format_version != 1)
                return fail("unsupported format version");
            saw_magic = true;
        } else if (key == "target") {
            if (!(ls >> c.target)) return fail("bad target line");
        } else if (key == "height") {
            if (!(ls >> c.height)) return fail("bad height line");
        } else if (key == "unit-size") {
            if (!(ls >> c.unit_size)) return fail("bad unit-size line");
        } else if (key == "units") {
            if (!(ls >> c.n_units) || c.n_units < 0) return fail("bad units line");
        } else if (key == "done") {
            std::string bits;
            ls >> bits;
            if (static_cast<long>(bits.size()) != c.n_units) return fail("bitmap length mismatch");
            c.done.reserve(bits.size());
            for (char ch : bits) {
                if (ch != '0' && ch != '1') return fail("bitmap must be 0/1");
                c.done.push_back(ch == '1');
            }
            saw_done = true;
        } else if (key == "scanned") {
            long idx, count;
            if (!(ls >> idx >> count) || idx < 0 || idx >= c.n_units)
                return fail("bad scanned line");
            c.unit_scanned[idx] = count;
        } else if (key == "witness") {
            long idx;
            if (!(ls >> idx) || idx < 0 || idx >= c.n_units) return fail("bad witness line");
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            if (rest.empty()) return fail("empty witness line");
            c.unit_witnesses[idx].push_back(rest);
        } else if (key.empty()) {
            continue;
        } else {
            return fail("unknown line '" + key + "'");
        }
    }
    if (!saw_magic) return fail("missing header");
    if (!saw_done) return fail("missing bitmap");
    for (long i = 0; i < c.n_units; ++i)
        if (c.done[i] && !c.unit_scanned.count(i))
            return fail("done unit " + std::to_string(i) + " has no scanned count");
    for (const auto& [idx, n] : c.unit_scanned) {
        (void)n;
        if (!c.done[idx]) return fail("scanned count for unfinished unit");
    }
    for (const auto& [idx, ws] : c.unit_witnesses) {
        (void)ws;
        if (!c.done[idx]) return fail("witnesses for unfinished unit");
    }
    return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CheckpointError("cannot write checkpoint temp file " + tmp);
        out << serialize_checkpoint(c);
        if (!out.flush()) throw CheckpointError("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot read checkpoint " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_checkpoint(buf.str());
}

} // namespace medians
