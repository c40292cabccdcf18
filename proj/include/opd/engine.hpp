#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "opd/bar.hpp"
#include "opd/envelope.hpp"
#include "opd/operad.hpp"

namespace opd {

/// Batch-run configuration. The field is "rational" (authoritative) or
/// "fp:<p>", which keeps rational arithmetic authoritative and adds prime
/// field cross-checks of every homology computation.
struct RunConfig {
    int maxArity = 5;
    std::string field = "rational";
    std::uint32_t modulus = 0;  // derived from field; 0 = no modular checks
    std::string cacheDir;
    std::string format = "json";  // "json" or "table"
    int parallelism = 0;          // 0 = automatic
    std::uint64_t seed = 20240101;

    static RunConfig fromJson(const std::string& text);
    std::string toJson() const;
    /// Throws std::invalid_argument on bad values (p not prime, arity < 2, ...).
    void validate() const;
};

struct CommandResult {
    int exit = 0;         // 0 matched, 1 mismatch, 2 usage error
    std::string report;   // canonical JSON or aligned text per config
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    bool gating = true;
    double seconds = 0;
    std::string detail;
};

/// The batch engine behind the command-line surface: one instance per
/// configuration, with a memoized (and optionally disk-backed) operad
/// registry shared by all commands.
class Engine {
public:
    explicit Engine(RunConfig cfg);
    const RunConfig& config() const { return cfg_; }

    CommandResult tables();
    CommandResult composeCmd(const std::string& a, const std::string& b);
    CommandResult barCmd(const std::string& m, const std::string& o, const std::string& n);
    CommandResult squareCmd(const std::string& name, int k, int m, int n);
    CommandResult koszulCmd(const std::string& name);
    CommandResult e1pageCmd(int n, int maxWeight, const std::string& xSpec);
    CommandResult nonPushoutCmd(int maxN);
    CommandResult pbwCmd(const std::string& source, int maxWeight);
    CommandResult envelopeCmd(int k, int n, int maxWeight);
    /// criterion 0 runs everything; exit 0 iff all gating criteria pass.
    CommandResult selftest(int criterion);

    /// The acceptance criteria, shared by selftest and the test suite.
    std::vector<CriterionResult> runAcceptance(int criterion);

    /// Registry lookup with in-memory memoization and optional disk cache.
    OperadPtr getOperad(const std::string& name, int N);

private:
    RunConfig cfg_;
    std::map<std::pair<std::string, int>, OperadPtr> registry_;
    std::mutex mu_;

    SideModule resolveModule(const std::string& name, const OperadPtr& over, Side side);
    void modularCheck(const ChainComplex& c) const;
    std::string finish(const nlohmann::json& j, const std::string& text) const;
};

/// Serialization of an operad (sequence, recipes, and all structure maps up
/// to the arity bound) as canonical JSON; used by the disk cache.
std::string operad_to_json(const OperadPtr& o);
OperadPtr operad_from_json(const std::string& text);

/// Parses "dim@degree[,dim@degree...]" into graded dimensions.
GradedSpace parse_graded(const std::string& spec);

}  // namespace opd
