#include <string>

#include "ubnet/ingest.hpp"

namespace ubnet {

namespace {

// Davis (1941) participation matrix, 18 women x 14 events, in the form
// reprinted by Freeman's comparative study. Row order is women 1..18,
// column order events 1..14; 89 ones in total.
constexpr int kWomen = 18;
constexpr int kEvents = 14;
constexpr unsigned char kAttendance[kWomen][kEvents] = {
    {1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0},  // 1  Evelyn
    {1, 1, 1, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0},  // 2  Laura
    {0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0},  // 3  Theresa
    {1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0},  // 4  Brenda
    {0, 0, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0},  // 5  Charlotte
    {0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0},  // 6  Frances
    {0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0},  // 7  Eleanor
    {0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0},  // 8  Pearl
    {0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0},  // 9  Ruth
    {0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0},  // 10 Verne
    {0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0},  // 11 Myrna
    {0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1},  // 12 Katherine
    {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 1},  // 13 Sylvia
    {0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1},  // 14 Nora
    {0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0},  // 15 Helen
    {0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0},  // 16 Dorothy
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},  // 17 Olivia
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},  // 18 Flora
};

}  // namespace

BipartiteGraph southern_women() {
    BipartiteGraph::Builder builder;
    for (int w = 0; w < kWomen; ++w) {
        for (int e = 0; e < kEvents; ++e) {
            if (kAttendance[w][e]) {
                // Women are numbered 1..18 and events 19..32, matching the
                // usual labelling of this dataset.
                builder.add(std::to_string(w + 1),
                            std::to_string(kWomen + e + 1), 1.0);
            }
        }
    }
    return std::move(builder).build();
}

}  // namespace ubnet
