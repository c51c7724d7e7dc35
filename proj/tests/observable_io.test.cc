// Copyright 2026 The incompat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "incompat/observable_io.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "incompat/error.h"
#include "incompat/presets.h"

using namespace incompat;

TEST(ObservableIo, round_trip_is_exact) {
    for (uint64_t s = 0; s < 10; s++) {
        Observable o = random_observable(2 + (int)(s % 2), s);
        std::stringstream ss;
        write_observable(ss, o);
        Observable back = read_observable(ss);
        EXPECT_EQ(back.matrix(), o.matrix());
    }
}

TEST(ObservableIo, reads_z1) {
    std::stringstream ss("obs n=2\n# Z on qubit 0\n1+0i 0 0 0\n0 1 0 0\n\n0 0 -1 0\n0 0 0 -1-0i\n");
    Observable o = read_observable(ss);
    EXPECT_EQ(o.matrix(), pauli_sum({{"ZI", 1}}));
}

TEST(ObservableIo, rejects_trace) {
    std::stringstream ss("obs n=1\n0.1 0\n0 -0.2\n");
    try {
        read_observable(ss);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidObservable);
        EXPECT_NE(std::string(e.what()).find("traceless"), std::string::npos);
    }
}

TEST(ObservableIo, parse_error_names_line) {
    std::stringstream ss("obs n=1\n1 0\n0 banana\n");
    try {
        read_observable(ss);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ObservableIo, complex_format) {
    EXPECT_EQ(format_complex({0.5, -0.25}), "0.5-0.25i");
    EXPECT_EQ(format_complex({1, 0}), "1+0i");
    std::complex<double> z;
    ASSERT_TRUE(parse_complex("-1e-3+2i", z));
    EXPECT_EQ(z, std::complex<double>(-1e-3, 2));
    ASSERT_TRUE(parse_complex("0.75", z));
    EXPECT_EQ(z, std::complex<double>(0.75, 0));
    EXPECT_FALSE(parse_complex("1+2", z));
}

TEST(ObservableIo, load_file) {
    std::string path = ::testing::TempDir() + "incompat_obs.txt";
    {
        std::ofstream f(path);
        write_observable(f, preset_example1()[1]);
    }
    EXPECT_EQ(load_observable_file(path).matrix(), preset_example1()[1].matrix());
    std::remove(path.c_str());
    EXPECT_THROW(load_observable_file(path), Error);
}
