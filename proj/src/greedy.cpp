#include "msgvm/greedy.hpp"

namespace msgvm {

std::pair<Partition, MergeTrace> run_greedy(const Graph& g) {
    MsgEngine engine(g);
    while (engine.merge_best()) {
    }
    return {renumber(engine.partition()), engine.trace()};
}

}  // namespace msgvm
