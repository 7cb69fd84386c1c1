#ifndef QSV_QSV_HPP
#define QSV_QSV_HPP

// Umbrella header for the quantum-state-verification planning library.

#include "qsv/adversarial_general.hpp"
#include "qsv/adversarial_homogeneous.hpp"
#include "qsv/adversary_oracle.hpp"
#include "qsv/errors.hpp"
#include "qsv/hedging.hpp"
#include "qsv/montecarlo.hpp"
#include "qsv/nonadversarial.hpp"
#include "qsv/numeric.hpp"
#include "qsv/spectrum.hpp"
#include "qsv/sweep.hpp"

#endif
