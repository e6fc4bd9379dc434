// Copyright 2026 The qsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "qsched/error.hpp"
#include "qsched/journal.hpp"
#include "qsched/qasm.hpp"
#include "qsched/rng.hpp"
#include "qsched/scheduler.hpp"
#include "support.hpp"

using namespace qsched;
using namespace std::chrono_literals;

namespace {

Circuit width_circuit(std::size_t n) {
  Circuit c;
  c.num_qubits = n;
  c.num_clbits = n;
  c.instructions.push_back({GateKind::H, {0}, {}, {}});
  for (std::size_t q = 0; q + 1 < n; ++q) c.instructions.push_back({GateKind::CX, {q, q + 1}, {}, {}});
  for (std::size_t q = 0; q < n; ++q) c.instructions.push_back({GateKind::MEASURE, {q}, {}, q});
  return c;
}

class BrokenBackend final : public Backend {
 public:
  BackendDescriptor descriptor() const override { return {"broken", 24, std::nullopt, true}; }
  CountsDistribution execute(const Circuit&, std::uint64_t, std::optional<std::uint64_t>,
                             std::optional<NoiseConfig>) const override {
    throw Error(ErrorCode::CapacityExceeded, "device lost calibration");
  }
};

struct Fixture {
  explicit Fixture(SchedulerConfig cfg = {}, std::shared_ptr<Journal> journal = nullptr,
                   std::shared_ptr<const Backend> backend = std::make_shared<StatevectorSimulator>())
      : clock(std::make_shared<ManualClock>(from_unix_ms(1'700'000'000'000))),
        sched(cfg, std::move(backend), clock, std::move(journal)) {}

  DispatchDecision cycle() {
    clock->advance(1000ms);
    return sched.run_cycle(clock->now());
  }

  std::shared_ptr<ManualClock> clock;
  Scheduler sched;
};

SchedulerConfig small(std::size_t capacity) {
  SchedulerConfig cfg;
  cfg.capacity = capacity;
  cfg.composed_shots = 200;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST(Jobs, TransitionsAreStrict) {
  using S = JobStatus;
  EXPECT_TRUE(can_transition(S::Queued, S::Scheduled));
  EXPECT_TRUE(can_transition(S::Scheduled, S::Running));
  EXPECT_TRUE(can_transition(S::Running, S::Done));
  EXPECT_TRUE(can_transition(S::Running, S::Failed));
  EXPECT_FALSE(can_transition(S::Queued, S::Running));
  EXPECT_FALSE(can_transition(S::Done, S::Queued));
  EXPECT_FALSE(can_transition(S::Scheduled, S::Done));
  QuantumJob j;
  EXPECT_THROW(j.transition(S::Done), Error);
  for (auto s : {S::Queued, S::Scheduled, S::Running, S::Done, S::Failed}) {
    EXPECT_EQ(parse_job_status(to_string(s)), s);
  }
}

TEST(Jobs, IdsAreUnique) {
  std::set<std::string> ids;
  for (int i = 0; i < 1000; ++i) ids.insert(new_job_id().value);
  EXPECT_EQ(ids.size(), 1000u);
  EXPECT_EQ(ids.begin()->size(), 32u);
}

TEST(SchedulerConfigTest, Validation) {
  SchedulerConfig cfg;
  cfg.capacity = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.composed_shots = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.cycle_duration = 0ms;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Enqueue, CapacityBoundaries) {
  SchedulerConfig cfg;
  cfg.capacity = 127;
  // A backend that can hold 200 qubits so only the configured capacity binds.
  Fixture f(cfg, nullptr, std::make_shared<StatevectorSimulator>(200));
  EXPECT_NO_THROW(f.sched.enqueue(width_circuit(4), 10));
  EXPECT_NO_THROW(f.sched.enqueue(width_circuit(127), 10));
  try {
    f.sched.enqueue(width_circuit(128), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooWide);
    EXPECT_EQ(e.detail(), "127");
  }
  EXPECT_EQ(f.sched.queue_size(), 2u);
  EXPECT_THROW(f.sched.enqueue(width_circuit(2), 0), Error);
}

TEST(Enqueue, EffectiveCapacityIsBackendBound) {
  Fixture f;  // default capacity 127, simulator max 24
  EXPECT_EQ(f.sched.effective_capacity(), 24u);
  EXPECT_THROW(f.sched.enqueue(width_circuit(25), 1), Error);
}

TEST(Enqueue, FifoSnapshotAndMeasureNormalisation) {
  Fixture f(small(16));
  const JobId a = f.sched.enqueue(parse_qasm("qreg q[3]; h q[0];", "a"), 5);
  const JobId b = f.sched.enqueue(width_circuit(2), 5);
  const auto snap = f.sched.queue_snapshot();
  ASSERT_EQ(snap.size(), 2u);
  EXPECT_EQ(snap[0].id, a);
  EXPECT_EQ(snap[0].width, 3u);
  EXPECT_EQ(snap[0].position, 0u);
  EXPECT_EQ(snap[1].id, b);
  const auto rec = f.sched.find(a);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->job.status, JobStatus::Queued);
  EXPECT_EQ(rec->job.circuit.num_clbits, 3u);
  EXPECT_FALSE(f.sched.find(JobId{"nope"}));
}

TEST(RunCycle, QuiescentQueueDispatches) {
  Fixture f(small(127));
  const JobId a = f.sched.enqueue(width_circuit(4), 1);
  // The arrival happened during this cycle, so the first boundary waits.
  EXPECT_EQ(f.cycle().kind, DispatchDecision::Kind::Wait);
  const auto d = f.cycle();
  ASSERT_EQ(d.kind, DispatchDecision::Kind::Dispatch);
  ASSERT_EQ(d.batch->placements.size(), 1u);
  EXPECT_EQ(f.sched.find(a)->job.status, JobStatus::Scheduled);
  EXPECT_EQ(f.sched.find(a)->job.batch_id, d.batch->batch_id);
}

TEST(RunCycle, ArrivalsKeepTheCycleOpen) {
  Fixture f(small(127));
  for (int i = 0; i < 5; ++i) {
    f.sched.enqueue(width_circuit(3), 1);
    EXPECT_EQ(f.cycle().kind, DispatchDecision::Kind::Wait);
  }
  const auto d = f.cycle();
  ASSERT_EQ(d.kind, DispatchDecision::Kind::Dispatch);
  EXPECT_EQ(d.batch->placements.size(), 5u);
}

TEST(RunCycle, ExactFitDispatchesDespiteArrivals) {
  Fixture f(small(10));
  f.sched.enqueue(width_circuit(6), 1);
  f.sched.enqueue(width_circuit(4), 1);
  const auto d = f.cycle();
  ASSERT_EQ(d.kind, DispatchDecision::Kind::Dispatch);
  EXPECT_EQ(d.batch->circuit.num_qubits, 10u);
}

TEST(RunCycle, LeftoverJobSaturatesBatch) {
  Fixture f(small(10));
  f.sched.enqueue(width_circuit(6), 1);
  const JobId big = f.sched.enqueue(width_circuit(5), 1);
  const auto d = f.cycle();
  ASSERT_EQ(d.kind, DispatchDecision::Kind::Dispatch);
  EXPECT_EQ(d.skipped, std::vector<JobId>{big});
  EXPECT_EQ(f.sched.queue_snapshot().front().id, big);
}

TEST(RunCycle, EmptyQueueWaits) {
  Fixture f(small(4));
  EXPECT_EQ(f.cycle().kind, DispatchDecision::Kind::Wait);
}

TEST(RunCycle, StrictSerialHoldsWhileInFlight) {
  auto cfg = small(4);
  cfg.strict_serial = true;
  Fixture f(cfg);
  f.sched.enqueue(width_circuit(4), 1);
  f.sched.enqueue(width_circuit(4), 1);
  const auto first = f.cycle();
  ASSERT_EQ(first.kind, DispatchDecision::Kind::Dispatch);
  EXPECT_EQ(f.sched.in_flight(), 1u);
  EXPECT_EQ(f.cycle().kind, DispatchDecision::Kind::Wait);
  f.sched.execute_batch(*first.batch);
  EXPECT_EQ(f.cycle().kind, DispatchDecision::Kind::Dispatch);
}

TEST(ExecuteBatch, ThreeJobsFinishWithComposedShots) {
  auto cfg = small(127);
  cfg.composed_shots = 10000;
  Fixture f(cfg);
  std::vector<JobId> ids;
  for (std::size_t w : {4u, 6u, 3u}) ids.push_back(f.sched.enqueue(width_circuit(w), 100));
  f.cycle();
  const auto d = f.cycle();
  ASSERT_EQ(d.kind, DispatchDecision::Kind::Dispatch);
  const auto results = f.sched.execute_batch(*d.batch);
  EXPECT_EQ(results.size(), 3u);
  for (const JobId& id : ids) {
    const auto r = f.sched.find(id);
    EXPECT_EQ(r->job.status, JobStatus::Done);
    ASSERT_TRUE(r->result);
    EXPECT_EQ(r->result->total_shots, 10000u);
    // GHZ-style circuits only ever produce all-zero or all-one keys.
    for (const auto& [k, c] : r->result->counts) {
      EXPECT_TRUE(k.find('1') == std::string::npos || k.find('0') == std::string::npos) << k;
    }
    EXPECT_TRUE(r->timings.completed);
  }
  EXPECT_EQ(f.sched.in_flight(), 0u);
}

TEST(ExecuteBatch, BackendFailureFailsEveryMember) {
  Fixture f(small(8), nullptr, std::make_shared<BrokenBackend>());
  const JobId a = f.sched.enqueue(width_circuit(2), 1);
  const JobId b = f.sched.enqueue(width_circuit(3), 1);
  f.cycle();
  const auto d = f.cycle();
  EXPECT_TRUE(f.sched.execute_batch(*d.batch).empty());
  for (const JobId& id : {a, b}) {
    const auto r = f.sched.find(id);
    EXPECT_EQ(r->job.status, JobStatus::Failed);
    EXPECT_EQ(r->job.error, "device lost calibration");
    EXPECT_FALSE(r->result);
  }
}

TEST(ExecuteBatch, SingleJobMatchesDirectExecution) {
  auto cfg = small(8);
  cfg.composed_shots = 4000;
  cfg.seed = 77;
  Fixture f(cfg);
  const Circuit c = parse_qasm(
      "qreg q[3]; creg c[3]; h q[0]; ry(0.7) q[1]; cx q[1],q[2]; measure q -> c;");
  const JobId id = f.sched.enqueue(c, 4000);
  f.cycle();
  const auto d = f.cycle();
  f.sched.execute_batch(*d.batch);
  // Same backend, same seed stream: the demuxed result equals a direct run.
  const auto direct = execute(c, 4000, rng::derive(77, rng::kBatchStream, 0));
  EXPECT_EQ(*f.sched.find(id)->result, direct);
}

TEST(Prune, DropsOnlyExpiredFinishedJobs) {
  auto cfg = small(8);
  cfg.result_ttl = 60s;
  Fixture f(cfg);
  const JobId done = f.sched.enqueue(width_circuit(2), 1);
  f.cycle();
  f.sched.execute_batch(*f.cycle().batch);
  const JobId queued = f.sched.enqueue(width_circuit(2), 1);
  EXPECT_EQ(f.sched.prune(f.clock->now() + 30s), 0u);
  EXPECT_EQ(f.sched.prune(f.clock->now() + 61s), 1u);
  EXPECT_FALSE(f.sched.find(done));
  EXPECT_TRUE(f.sched.find(queued));
}

// Property suite: random arrival patterns, every job drains, batches respect
// capacity, and first-fit selection matches the reference packer.
TEST(Liveness, RandomArrivalsDrain) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto cfg = small(1 + rng() % 12);
    cfg.composed_shots = 8;
    Fixture f(cfg);
    std::set<JobId> accepted;
    std::multiset<JobId> dispatched;
    std::vector<JobId> prior_skipped;
    const int total = 30;
    int submitted = 0, quiet = 0;
    for (int step = 0; step < 500 && (submitted < total || f.sched.queue_size() > 0); ++step) {
      const int arrivals = submitted < total ? static_cast<int>(rng() % 3) : 0;
      for (int a = 0; a < arrivals && submitted < total; ++a, ++submitted) {
        accepted.insert(f.sched.enqueue(width_circuit(1 + rng() % cfg.capacity), 1));
      }
      std::vector<std::size_t> widths;
      for (const auto& e : f.sched.queue_snapshot()) widths.push_back(e.width);
      const auto expected = qtest::reference_pack(widths, cfg.capacity);
      const auto snap = f.sched.queue_snapshot();
      const auto d = f.cycle();
      if (d.kind != DispatchDecision::Kind::Dispatch) {
        quiet = arrivals == 0 && !snap.empty() ? quiet + 1 : 0;
        EXPECT_EQ(quiet, 0) << "waited on a quiescent non-empty queue";
        continue;
      }
      ASSERT_EQ(d.batch->placements.size(), expected.size());
      std::set<JobId> considered;
      for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_EQ(d.batch->placements[k].job_id, snap[expected[k]].id);
        dispatched.insert(d.batch->placements[k].job_id);
        considered.insert(d.batch->placements[k].job_id);
      }
      for (const JobId& id : d.skipped) considered.insert(id);
      for (const JobId& id : prior_skipped) EXPECT_TRUE(considered.count(id));
      prior_skipped = d.skipped;
      EXPECT_LE(d.batch->circuit.num_qubits, cfg.capacity);
      f.sched.execute_batch(*d.batch);
    }
    EXPECT_EQ(f.sched.queue_size(), 0u);
    EXPECT_EQ(dispatched.size(), accepted.size());
    EXPECT_EQ(std::set<JobId>(dispatched.begin(), dispatched.end()), accepted);
    for (const auto& r : f.sched.records()) EXPECT_EQ(r.job.status, JobStatus::Done);
  }
}

// ---------------------------------------------------------------------------
// Journal

class JournalTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = qtest::temp_dir("journal"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path file() const { return dir_ / "jobs.jsonl"; }

  std::filesystem::path dir_;
};

TEST_F(JournalTest, ReplayRestoresEveryState) {
  auto journal = std::make_shared<Journal>(file());
  Fixture f(small(4), journal);
  const JobId done = f.sched.enqueue(parse_qasm("qreg q[2]; x q[1];", "flip"), 7);
  f.cycle();
  f.sched.execute_batch(*f.cycle().batch);
  const JobId scheduled = f.sched.enqueue(width_circuit(4), 3);
  const JobId queued = f.sched.enqueue(width_circuit(3), 2);
  const auto d = f.cycle();  // 4 + 3 > 4: saturated, the 4-wide job goes
  ASSERT_EQ(d.kind, DispatchDecision::Kind::Dispatch);

  ReplayStats stats;
  const auto records = Journal::replay(file(), &stats);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(stats.truncated_lines, 0u);
  EXPECT_EQ(stats.rolled_back, 1u);
  EXPECT_EQ(records[0].job.id, done);
  EXPECT_EQ(records[0].job.status, JobStatus::Done);
  EXPECT_EQ(records[0].job.circuit.name, "flip");
  EXPECT_EQ(records[0].job.requested_shots, 7u);
  EXPECT_EQ(*records[0].result, *f.sched.find(done)->result);
  EXPECT_EQ(records[1].job.id, scheduled);
  EXPECT_EQ(records[1].job.status, JobStatus::Queued);
  EXPECT_FALSE(records[1].job.batch_id);
  EXPECT_FALSE(records[1].timings.dispatched);
  EXPECT_EQ(records[2].job.id, queued);
  EXPECT_EQ(records[2].job.status, JobStatus::Queued);
  EXPECT_TRUE(records[2].job.circuit.same_structure(f.sched.find(queued)->job.circuit));
  EXPECT_EQ(records[2].job.submitted_at, f.sched.find(queued)->job.submitted_at);
}

TEST_F(JournalTest, FailedAndPrunedReplay) {
  auto journal = std::make_shared<Journal>(file());
  auto cfg = small(4);
  cfg.result_ttl = 1s;
  Fixture f(cfg, journal, std::make_shared<BrokenBackend>());
  const JobId a = f.sched.enqueue(width_circuit(2), 1);
  f.cycle();
  f.sched.execute_batch(*f.cycle().batch);
  auto records = Journal::replay(file());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].job.status, JobStatus::Failed);
  EXPECT_EQ(records[0].job.error, "device lost calibration");
  f.sched.prune(f.clock->now() + 2s);
  EXPECT_TRUE(Journal::replay(file()).empty());
  (void)a;
}

TEST_F(JournalTest, TornLastLineIsDropped) {
  {
    auto journal = std::make_shared<Journal>(file());
    Fixture f(small(4), journal);
    f.sched.enqueue(width_circuit(2), 1);
    f.sched.enqueue(width_circuit(2), 1);
  }
  std::ofstream(file(), std::ios::app) << R"({"v":1,"event":"submitted","job_id":"abc)";
  ReplayStats stats;
  const auto records = Journal::replay(file(), &stats);
  EXPECT_EQ(records.size(), 2u);
  EXPECT_EQ(stats.truncated_lines, 1u);
}

TEST_F(JournalTest, CorruptionInTheMiddleIsAnError) {
  {
    auto journal = std::make_shared<Journal>(file());
    Fixture f(small(4), journal);
    f.sched.enqueue(width_circuit(2), 1);
  }
  std::string text;
  {
    std::ifstream in(file());
    std::getline(in, text);
  }
  std::ofstream(file(), std::ios::trunc) << "garbage\n" << text << "\n";
  try {
    Journal::replay(file());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST_F(JournalTest, MissingFileReplaysEmpty) {
  EXPECT_TRUE(Journal::replay(dir_ / "absent.jsonl").empty());
}

TEST_F(JournalTest, CompactionPreservesReplay) {
  auto journal = std::make_shared<Journal>(file());
  Fixture f(small(4), journal);
  f.sched.enqueue(width_circuit(2), 1);
  f.cycle();
  f.sched.execute_batch(*f.cycle().batch);
  f.sched.enqueue(width_circuit(3), 1);
  const auto before = Journal::replay(file());
  journal.reset();
  Journal::compact(file(), before);
  const auto after = Journal::replay(file());
  ASSERT_EQ(after.size(), before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_EQ(after[i].job.id, before[i].job.id);
    EXPECT_EQ(after[i].job.status, before[i].job.status);
    EXPECT_EQ(after[i].result, before[i].result);
  }
  // Every line carries the format version.
  std::ifstream in(file());
  for (std::string line; std::getline(in, line);) {
    EXPECT_EQ(nlohmann::json::parse(line).at("v"), 1);
  }
}
