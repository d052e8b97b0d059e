#include "mgwi/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mgwi {

int default_jobs() {
    if (const char* env = std::getenv("MGWI_JOBS")) {
        try {
            const int jobs = std::stoi(env);
            if (jobs > 0) return jobs;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace mgwi
