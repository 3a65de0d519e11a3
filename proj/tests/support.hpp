#pragma once

#include <filesystem>
#include <string>

#include "oracles/oracles.hpp"
#include "rankaudit/audit_store.hpp"
#include "rankaudit/graph.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(RANKAUDIT_FIXTURE_DIR) / name;
}

// The 6-node toy graph: 1->2, 2->3, 3->1, 4->1, 5->4, 2->5, node 6 isolated.
inline oracle::RawGraph toy_raw() {
    oracle::RawGraph g;
    g.ids = {"1", "2", "3", "4", "5", "6"};
    g.edges = {{"1", "2"}, {"2", "3"}, {"3", "1"}, {"4", "1"}, {"5", "4"}, {"2", "5"}};
    g.labels = {{"1", "A"}, {"2", "B"}, {"3", "A"}, {"4", "B"}, {"5", "A"}, {"6", "B"}};
    return g;
}

inline rankaudit::DirectedGraph toy_graph() {
    return rankaudit::parse_graph(rankaudit::read_file_bytes(fixture("toy_edges.csv")),
                                  rankaudit::read_file_bytes(fixture("toy_labels.csv")))
        .graph;
}

// Fresh scratch directory under the build tree, emptied on construction.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("rankaudit-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testing_support
