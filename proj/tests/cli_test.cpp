/*
 * Copyright 2026 The desdist Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "desdist/desdist.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("desdist_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(const std::string& args) {
        const std::string cmd = "cd '" + dir_.string() + "' && '" DESDIST_CLI_PATH "' " + args + " >out.txt 2>err.txt";
        int status = std::system(cmd.c_str());
        Outcome o;
        o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        o.out = slurp(dir_ / "out.txt");
        o.err = slurp(dir_ / "err.txt");
        return o;
    }

    void write(const std::string& name, const std::string& text) { desdist::write_file_atomic(dir_ / name, text); }

    Outcome guideway_sup() {
        auto o = run("gen guideway -o gw");
        if (o.code != 0)
            return o;
        return run("supcon gw/plant.aut gw/spec.aut -o sup.aut");
    }

    fs::path dir_;
};

const char* kViolating =
    "automaton K\nstates 2\nmarked 0 1\nevents\na c\nu u\ntrans\n0 a 1\nend\n";
const char* kPlant =
    "automaton G\nstates 3\nmarked 0 1 2\nevents\na c\nu u\ntrans\n0 a 1\n1 u 2\nend\n";

} // namespace

TEST_F(Cli, GuidewayPipeline) {
    auto o = guideway_sup();
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("SUP: 28 states"), std::string::npos);
    EXPECT_EQ(run("check nonblocking gw/plant.aut").code, 0);
    EXPECT_EQ(run("check nonblocking sup.aut").code, 0);
    EXPECT_EQ(run("check controllable sup.aut gw/plant.aut").code, 0);
    EXPECT_EQ(run("check controllable gw/spec.aut gw/plant.aut").code, 1);

    o = run("localize sup.aut gw/plant.aut --partition gw/per_event.part -o loc");
    ASSERT_EQ(o.code, 0) << o.err;
    auto report = slurp(dir_ / "loc" / "report.txt");
    EXPECT_NE(report.find("event 11 disabled_at 2"), std::string::npos);
    EXPECT_NE(report.find("event 25 disabled_at 0"), std::string::npos);
    EXPECT_NE(report.find("block 5 events 15 25 local_states 28 reduced_states 1"), std::string::npos);
    EXPECT_NE(report.find("control_equivalent true"), std::string::npos);

    std::string locs;
    for (int i = 1; i <= 5; ++i)
        locs += " loc/loc_" + std::to_string(i) + ".reduced.aut";
    o = run("check equiv gw/plant.aut sup.aut" + locs);
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "control_equivalent: true\n");
    EXPECT_EQ(run("check equiv gw/plant.aut sup.aut loc/loc_1.reduced.aut").code, 1);
    EXPECT_EQ(run("check local loc/loc_1.reduced.aut gw/plant.aut --block 11 --within sup.aut").code, 0);
}

TEST_F(Cli, ReduceWholeSupervisor) {
    ASSERT_EQ(guideway_sup().code, 0);
    auto o = run("reduce sup.aut gw/plant.aut -o red.aut");
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(desdist::load_automaton(dir_ / "red.aut").state_count(), 3U);
    o = run("reduce sup.aut gw/plant.aut --partition gw/per_event.part --block 5 -o r5.aut");
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(desdist::load_automaton(dir_ / "r5.aut").state_count(), 1U);
    EXPECT_EQ(run("reduce sup.aut gw/plant.aut --partition gw/per_event.part --block 0 -o x.aut").code, 3);
    EXPECT_EQ(run("reduce sup.aut gw/plant.aut --partition gw/per_event.part --block 6 -o x.aut").code, 3);
}

TEST_F(Cli, OutputsAreByteIdenticalOnRerun) {
    ASSERT_EQ(guideway_sup().code, 0);
    ASSERT_EQ(run("localize sup.aut gw/plant.aut --partition gw/per_component.part -o a").code, 0);
    ASSERT_EQ(run("localize sup.aut gw/plant.aut --partition gw/per_component.part -o b").code, 0);
    for (const auto& entry : fs::directory_iterator(dir_ / "a"))
        EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "b" / entry.path().filename())) << entry.path();
    auto first = slurp(dir_ / "sup.aut");
    ASSERT_EQ(run("supcon gw/plant.aut gw/spec.aut -o sup.aut").code, 0);
    EXPECT_EQ(slurp(dir_ / "sup.aut"), first);
}

TEST_F(Cli, CheckVerdicts) {
    write("k.aut", kViolating);
    write("g.aut", kPlant);
    auto o = run("check controllable k.aut g.aut");
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.out, "controllable: false\n");
    EXPECT_EQ(run("check controllable g.aut g.aut").code, 0);
    EXPECT_EQ(run("check normal k.aut g.aut --observable a,u").code, 0);
    EXPECT_EQ(run("check relobs g.aut g.aut --observable a").code, 0);
    EXPECT_EQ(run("supcon g.aut k.aut -o s.aut").code, 0);
    EXPECT_EQ(desdist::load_automaton(dir_ / "s.aut").state_count(), 1U);
}

TEST_F(Cli, DecomposeHypothesisUnmet) {
    write("g.aut", kPlant);
    write("one.part", "partition one\nblock: a\n");
    auto o = run("decompose g.aut g.aut --partition one.part --observable a,u -o d");
    EXPECT_EQ(o.code, 4);
    EXPECT_NE(o.err.find("exactly 2 blocks"), std::string::npos) << o.err;
}

TEST_F(Cli, DecomposeWitnessMissing) {
    const char* g =
        "automaton G\nstates 3\nmarked 0 1 2\nevents\na c\nb c\nu u\ntrans\n0 a 1\n0 b 2\n1 u 1\nend\n";
    write("g.aut", g);
    write("p.part", "partition p\nblock: a\nblock: b\n");
    auto o = run("decompose g.aut g.aut --partition p.part --observable a,b,u -o d");
    EXPECT_EQ(o.code, 4);
    EXPECT_NE(o.err.find("no unobservable controllable witness"), std::string::npos) << o.err;
}

TEST_F(Cli, UsageAndInputErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("trim").code, 2);
    EXPECT_EQ(run("compose out.aut only_one.aut").code, 2);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("check nonblocking missing.aut").code, 3);
    write("bad.aut", "automaton B\nstates 1\nmarked 4\nevents\ntrans\nend\n");
    auto o = run("trim bad.aut -o t.aut");
    EXPECT_EQ(o.code, 3);
    EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
    EXPECT_FALSE(fs::exists(dir_ / "t.aut"));
    write("g.aut", kPlant);
    EXPECT_EQ(run("project g.aut --keep zz -o p.aut").code, 3);
}

TEST_F(Cli, ProjectLiftDot) {
    write("g.aut", kPlant);
    ASSERT_EQ(run("project g.aut --keep u -o p.aut").code, 0);
    auto p = desdist::load_automaton(dir_ / "p.aut");
    EXPECT_EQ(p.event_count(), 1U);
    ASSERT_EQ(run("lift p.aut --add a:c -o l.aut").code, 0);
    EXPECT_EQ(desdist::load_automaton(dir_ / "l.aut").event_count(), 2U);
    auto o = run("dot g.aut");
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("digraph G"), std::string::npos);
}
