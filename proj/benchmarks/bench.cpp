#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pheno/crypto.hpp"
#include "pheno/features.hpp"
#include "pheno/forecast.hpp"
#include "pheno/gzio.hpp"
#include "pheno/mobility.hpp"
#include "pheno/time.hpp"

namespace {

using namespace pheno;

std::string sample_csv(size_t rows) {
  std::string text = "timestamp,tz_offset,bpm\n";
  std::mt19937_64 rng(11);
  std::int64_t ts = 1578268800000;
  for (size_t i = 0; i < rows; ++i) {
    ts += 5000;
    text += std::to_string(ts) + ",480," + std::to_string(55 + int(rng() % 60)) + "\n";
  }
  return text;
}

void BM_EncryptChunk(benchmark::State& state) {
  std::string csv = sample_csv(static_cast<size_t>(state.range(0)));
  Bytes plain(csv.begin(), csv.end());
  KeyPair kp = generate_keypair(Bytes(32, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(encrypt_chunk(plain, kp.public_key, true));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * plain.size()));
}
BENCHMARK(BM_EncryptChunk)->Arg(1000)->Arg(17280);

void BM_DecryptChunk(benchmark::State& state) {
  std::string csv = sample_csv(static_cast<size_t>(state.range(0)));
  Bytes plain(csv.begin(), csv.end());
  KeyPair kp = generate_keypair(Bytes(32, 7));
  Bytes chunk = encrypt_chunk(plain, kp.public_key, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decrypt_chunk(chunk, kp.private_key));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * plain.size()));
}
BENCHMARK(BM_DecryptChunk)->Arg(1000)->Arg(17280);

void BM_GzipRoundTrip(benchmark::State& state) {
  std::string csv = sample_csv(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    auto gz = gzip_compress(csv);
    benchmark::DoNotOptimize(gzip_decompress(gz));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * csv.size()));
}
BENCHMARK(BM_GzipRoundTrip)->Arg(17280);

void BM_FindWalks(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<int> minutes(1440);
  for (auto& m : minutes) m = int(rng() % 40);
  for (auto _ : state) benchmark::DoNotOptimize(find_walks(minutes, 3, 10));
}
BENCHMARK(BM_FindWalks);

void BM_PauseFlight(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<GpsSample> samples;
  double x = 0, y = 0;
  std::int64_t lms = 0;
  for (int i = 0; i < 1440; ++i) {
    lms += 60000;
    x += (double(rng() % 2000) - 1000.0) / 50.0;
    y += (double(rng() % 2000) - 1000.0) / 50.0;
    samples.push_back({lms, x, y});
  }
  MobilityParams p;
  for (auto _ : state) benchmark::DoNotOptimize(extract_pauses_flights(samples, p));
}
BENCHMARK(BM_PauseFlight);

void BM_SeasonalArFit(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::vector<double> y(90);
  for (size_t t = 0; t < y.size(); ++t)
    y[t] = 100 + 10 * ((t % 7) == 0) + double(rng() % 100) / 25.0;
  for (auto _ : state) {
    auto model = fit_seasonal_ar(y, 3, 21);
    benchmark::DoNotOptimize(model->predict(y, y.size() - 1));
  }
}
BENCHMARK(BM_SeasonalArFit);

}  // namespace

BENCHMARK_MAIN();
