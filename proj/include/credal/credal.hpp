#pragma once

#include "credal/bayes_net.hpp"
#include "credal/classify.hpp"
#include "credal/error.hpp"
#include "credal/factor.hpp"
#include "credal/incomplete.hpp"
#include "credal/network_io.hpp"
#include "credal/previsions.hpp"
