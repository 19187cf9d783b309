#pragma once

#include "vitfec/channel.hpp"
#include "vitfec/decoder.hpp"
#include "vitfec/encoder.hpp"
#include "vitfec/harness.hpp"
#include "vitfec/oracle.hpp"
#include "vitfec/trellis.hpp"
#include "vitfec/version.hpp"
