/*
 *   Copyright 2026 The daniell authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DANIELL_RANDOM_HPP
#define DANIELL_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace daniell::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9E3779B97F4A7C15ull;
	x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
	x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
	return x ^ (x >> 31);
}

constexpr std::uint64_t kBatch = 1u << 16;

/// Runs fn(batch, rng, rows) over fixed-size batches, each with its own
/// stream seeded from (seed, batch); results do not depend on threading.
template <class Fn>
void for_batches(std::uint64_t count, std::uint64_t seed, Fn fn) {
	const std::uint64_t batches = (count + kBatch - 1) / kBatch;
	unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
	workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, batches));
	auto run = [&](unsigned w) {
		for (std::uint64_t b = w; b < batches; b += workers) {
			std::mt19937_64 rng(splitmix64(seed ^ splitmix64(b)));
			std::uint64_t rows = std::min(kBatch, count - b * kBatch);
			fn(b, rng, rows);
		}
	};
	if (workers <= 1) {
		run(0);
		return;
	}
	std::vector<std::thread> pool;
	for (unsigned w = 0; w < workers; ++w) {
		pool.emplace_back(run, w);
	}
	for (auto &t : pool) {
		t.join();
	}
}

} // namespace daniell::detail

#endif // DANIELL_RANDOM_HPP
