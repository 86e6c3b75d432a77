// Copyright 2026 The toa-firstclick Authors
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

#include "toa/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

#include "toa/errors.hpp"

namespace toa {

namespace {

// The FFTW planner keeps global state; only plan creation and destruction
// need serializing, execution with new-array calls is reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void FftBuffer::Free::operator()(std::complex<double>* p) const { fftw_free(p); }

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
    auto* raw = static_cast<std::complex<double>*>(fftw_malloc(sizeof(std::complex<double>) * n));
    if (raw == nullptr && n != 0) {
        throw std::bad_alloc();
    }
    for (std::size_t j = 0; j < n; ++j) {
        new (raw + j) std::complex<double>(0.0, 0.0);
    }
    data_.reset(raw);
}

struct FftPlan::Plans {
    std::size_t n;
    fftw_plan fwd;
    fftw_plan bwd;

    explicit Plans(std::size_t size) : n(size) {
        FftBuffer scratch(size);
        std::lock_guard<std::mutex> lock(planner_mutex());
        int len = static_cast<int>(size);
        fwd = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD,
                               FFTW_ESTIMATE);
        if (fwd == nullptr || bwd == nullptr) {
            throw ConfigError("FFTW could not plan a transform of length " + std::to_string(size));
        }
    }

    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

FftPlan::FftPlan(std::size_t n) : plans_(std::make_shared<const Plans>(n)) {}

std::size_t FftPlan::size() const { return plans_->n; }

void FftPlan::forward(FftBuffer& buffer) const {
    if (buffer.size() != plans_->n) {
        throw UsageError("FFT buffer length does not match plan");
    }
    fftw_execute_dft(plans_->fwd, as_fftw(buffer.data()), as_fftw(buffer.data()));
}

void FftPlan::backward(FftBuffer& buffer) const {
    if (buffer.size() != plans_->n) {
        throw UsageError("FFT buffer length does not match plan");
    }
    fftw_execute_dft(plans_->bwd, as_fftw(buffer.data()), as_fftw(buffer.data()));
}

}  // namespace toa
