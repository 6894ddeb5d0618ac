// floq.hpp — umbrella header

#pragma once

#include "floq/bessel.hpp"
#include "floq/couplings.hpp"
#include "floq/drive.hpp"
#include "floq/dut.hpp"
#include "floq/errors.hpp"
#include "floq/floquet.hpp"
#include "floq/fourier.hpp"
#include "floq/fourier_hamiltonian.hpp"
#include "floq/gvv.hpp"
#include "floq/parallel.hpp"
#include "floq/propagate.hpp"
#include "floq/sweep.hpp"
