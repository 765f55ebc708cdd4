#pragma once

// Representatives of simple order types for small n: binary database files
// (n points per record, 8- or 16-bit unsigned little-endian coordinates) and
// a sampling generator that deduplicates by a canonical sign pattern.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccol/geom.hpp"

namespace ccol {

enum class CoordWidth : int { Bits8 = 8, Bits16 = 16 };
enum class RecordSource { Database, Sampled };

const char* to_string(RecordSource s);
CoordWidth parse_coord_width(const std::string& s);

struct OrderTypeRecord {
    int n = 0;
    LabelledPointSet points;
    RecordSource source = RecordSource::Database;
};

/// Byte size of one record.
std::size_t record_bytes(int n, CoordWidth width);

/// Streams records from a database file. The constructor checks the file size;
/// next() decodes one record and throws std::runtime_error (with the record
/// index) if it is not in general position.
class OrderTypeFileReader {
public:
    OrderTypeFileReader(const std::filesystem::path& path, int n, CoordWidth width);

    std::uint64_t record_count() const { return records_; }
    std::uint64_t position() const { return next_; }
    std::optional<OrderTypeRecord> next();

private:
    std::ifstream in_;
    int n_;
    CoordWidth width_;
    std::uint64_t records_ = 0;
    std::uint64_t next_ = 0;
    std::vector<unsigned char> buffer_;
};

std::vector<OrderTypeRecord> read_order_type_file(const std::filesystem::path& path, int n, CoordWidth width);

/// Coordinates must be non-negative and fit the width.
void write_order_type_file(const std::filesystem::path& path, std::span<const LabelledPointSet> sets,
                           CoordWidth width);

struct ProbeCandidate {
    int n = 0;
    CoordWidth width = CoordWidth::Bits8;
    std::uint64_t records = 0;
    /// The first few records decode to general-position sets.
    bool plausible = false;
};

/// Layouts (n in [3, max_n], both widths) consistent with the file size.
std::vector<ProbeCandidate> probe_order_type_file(const std::filesystem::path& path, int max_n = 10);

/// Conventional file name for n: otypesNN.b08 up to n = 8, .b16 above.
std::string database_file_name(int n);
CoordWidth database_width(int n);

/// Canonical key of the unlabelled order type of a general-position set: the
/// smallest sign pattern over the labellings that start at a hull vertex and
/// continue counterclockwise around it. Orientation-preserving bijections
/// carry such labellings onto each other, so equal keys means combinatorially
/// equivalent. With `identify_mirrors` the mirror image counts as the same.
SignPattern canonical_form(const LabelledPointSet& points, bool identify_mirrors = false);

struct GeneratorConfig {
    std::uint64_t seed = 0;
    /// Stop as soon as this many classes are known.
    std::optional<std::size_t> target;
    /// Give up after this many consecutive samples without a new class.
    std::uint64_t stall_limit = 20000;
    bool identify_mirrors = false;
};

struct GenerationResult {
    std::vector<OrderTypeRecord> records;
    std::uint64_t samples = 0;
    bool stalled = false;
    /// A target was given and reached.
    bool complete = false;
};

constexpr int kGeneratorMaxN = 8;

/// Samples general-position sets in [0, 2^16)^2 (uniform and clustered
/// multi-scale mixtures), keeps the first set of each new class. Deterministic
/// given the config.
GenerationResult generate_representatives(int n, const GeneratorConfig& config);

struct RepresentativeConfig {
    /// Directory with otypesNN.* files; empty means $CCOL_OTDB_DIR.
    std::optional<std::filesystem::path> database_dir;
    /// An explicit file overrides the directory lookup.
    std::optional<std::filesystem::path> database_file;
    /// False skips every database lookup, including the environment.
    bool consult_database = true;
    bool allow_fallback = true;
    GeneratorConfig fallback;
};

struct RepresentativeSupply {
    RecordSource source = RecordSource::Database;
    std::string description;
    /// Database files are taken as complete; the fallback only when its
    /// target was reached.
    bool complete = true;
    std::function<std::optional<LabelledPointSet>()> next;
};

/// Database if one is configured and present, else the generator. Throws
/// std::runtime_error when neither is available.
RepresentativeSupply representatives(int n, const RepresentativeConfig& config);

}  // namespace ccol
