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

#ifndef TOA_FFT_HPP
#define TOA_FFT_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace toa {

/// SIMD-aligned complex buffer suitable for FFTW's new-array execute calls.
class FftBuffer {
   public:
    explicit FftBuffer(std::size_t n);

    std::size_t size() const { return n_; }
    std::complex<double>* data() { return data_.get(); }
    const std::complex<double>* data() const { return data_.get(); }
    std::span<std::complex<double>> span() { return {data_.get(), n_}; }
    std::span<const std::complex<double>> span() const { return {data_.get(), n_}; }

    std::complex<double>& operator[](std::size_t j) { return data_[j]; }
    const std::complex<double>& operator[](std::size_t j) const { return data_[j]; }

   private:
    struct Free {
        void operator()(std::complex<double>* p) const;
    };
    std::size_t n_;
    std::unique_ptr<std::complex<double>[], Free> data_;
};

/// Forward/backward complex DFT plan pair of a fixed length.  Both
/// directions are unnormalized.  Plans are immutable once built; execution
/// works in place on caller-owned FftBuffers, so one plan can be shared by
/// several threads as long as each thread brings its own buffer.
class FftPlan {
   public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const;

    void forward(FftBuffer& buffer) const;
    void backward(FftBuffer& buffer) const;

   private:
    struct Plans;
    std::shared_ptr<const Plans> plans_;
};

}  // namespace toa

#endif  // TOA_FFT_HPP
