#pragma once

#include <stdexcept>
#include <string>

namespace graphgame {

// Base for every error raised by the library.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidEdgeError : public GameError {
 public:
  using GameError::GameError;
};

class IllegalMoveError : public GameError {
 public:
  using GameError::GameError;
};

class FormatError : public GameError {
 public:
  using GameError::GameError;
};

class DegenerateBoardError : public GameError {
 public:
  using GameError::GameError;
};

class DimensionError : public GameError {
 public:
  using GameError::GameError;
};

// Instance exceeds what the implementation can hold (order, edge count or
// state budget).
class CapacityError : public GameError {
 public:
  using GameError::GameError;
};

class PreconditionError : public GameError {
 public:
  using GameError::GameError;
};

// Internal bookkeeping disagrees with the board (strategy memory, missing
// layer entries).
class ConsistencyError : public GameError {
 public:
  using GameError::GameError;
};

}  // namespace graphgame
