#pragma once

#include "rdc/align.hpp"
#include "rdc/archive.hpp"
#include "rdc/bitstream.hpp"
#include "rdc/deflate.hpp"
#include "rdc/diff.hpp"
#include "rdc/errors.hpp"
#include "rdc/huffman.hpp"
#include "rdc/sequence.hpp"
#include "rdc/synthetic.hpp"
#include "rdc/varint.hpp"
