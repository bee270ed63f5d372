#pragma once

// Per-paradigm layouts and step rules. advance() dispatches here; the
// functions are public so tests can drive a single rule set directly.

#include <array>
#include <utility>

#include "cheesebench/episode.hpp"

namespace cheesebench::paradigms {

// Layout initialisers: build the grid, start pose and flags for one trial.
// `session` seeds choices that stay fixed for all trials of a session,
// `trial` seeds choices that change per trial.
void init_mwm(EpisodeState& s, Rng& session, Rng& trial);
void init_barnes(EpisodeState& s, Rng& session, Rng& trial);
void init_star(EpisodeState& s, Rng& session, Rng& trial);
void init_tmaze(EpisodeState& s, Rng& session, Rng& trial);
void init_ram(EpisodeState& s, Rng& session, Rng& trial);
void init_dnms(EpisodeState& s, Rng& session, Rng& trial);
void init_operant(EpisodeState& s, Rng& session, Rng& trial);
void init_shuttle(EpisodeState& s, Rng& session, Rng& trial);
void init_cpp(EpisodeState& s, Rng& session, Rng& trial);

StepOutcome step_mwm(EpisodeState& s, Action a);
StepOutcome step_barnes(EpisodeState& s, Action a);
StepOutcome step_star(EpisodeState& s, Action a);
StepOutcome step_tmaze(EpisodeState& s, Action a);
StepOutcome step_ram(EpisodeState& s, Action a);
StepOutcome step_dnms(EpisodeState& s, Action a);
StepOutcome step_operant(EpisodeState& s, Action a);
StepOutcome step_shuttle(EpisodeState& s, Action a);
StepOutcome step_cpp(EpisodeState& s, Action a);

// Fixed geometry, exposed for tests and scripted agents.
inline constexpr int kMwmSize = 21;
inline constexpr std::array<Pose, 4> kMwmStarts = {
    Pose{10, 1, Heading::kSouth}, Pose{19, 10, Heading::kWest},
    Pose{10, 19, Heading::kNorth}, Pose{1, 10, Heading::kEast}};
inline constexpr std::array<std::pair<int, int>, 4> kMwmPlatforms = {
    std::pair{6, 6}, std::pair{14, 6}, std::pair{14, 14}, std::pair{6, 14}};

/// Arm-end cells of the star maze (N, E, SE, SW, W).
inline constexpr std::array<std::pair<int, int>, 5> kStarArmEnds = {
    std::pair{10, 1}, std::pair{19, 11}, std::pair{12, 19}, std::pair{8, 19}, std::pair{1, 9}};

inline constexpr std::pair<int, int> kTMazeStart = {6, 10};
inline constexpr std::array<std::pair<int, int>, 2> kTMazeArmEnds = {std::pair{1, 1}, std::pair{11, 1}};

/// Arm-end cells of the radial maze, clockwise from north-right.
inline constexpr std::array<std::pair<int, int>, 8> kRadialArmEnds = {
    std::pair{11, 2}, std::pair{18, 9}, std::pair{18, 11}, std::pair{11, 18},
    std::pair{9, 18}, std::pair{2, 11}, std::pair{2, 9}, std::pair{9, 2}};

inline constexpr int kDnmsWidth = 5;
inline constexpr int kDnmsHeight = 4;
inline constexpr std::pair<int, int> kDnmsSampleCell = {2, 1};
inline constexpr std::array<std::pair<int, int>, 2> kDnmsChoiceCells = {std::pair{1, 1}, std::pair{3, 1}};
inline constexpr Pose kDnmsStart = {2, 2, Heading::kNorth};

/// Operant chamber: both levers and the magazine sit along the top wall.
inline constexpr int kOperantWidth = 5;
inline constexpr int kOperantHeight = 4;
inline constexpr std::array<std::pair<int, int>, 2> kOperantLevers = {std::pair{1, 1}, std::pair{3, 1}};
inline constexpr std::pair<int, int> kOperantMagazine = {2, 1};
inline constexpr Pose kOperantStart = {2, 2, Heading::kNorth};

/// Shuttle box: two compartments split by a wall column with one doorway.
inline constexpr int kShuttleWidth = 7;
inline constexpr int kShuttleHeight = 3;
inline constexpr int kShuttleDivider = 3;
inline constexpr int kShuttleDoorY = 1;

/// Barnes hole cells, evenly spaced clockwise from east.
const std::array<std::pair<int, int>, 12>& barnes_holes();

/// Arm index for a radial-maze cell, -1 if the cell is not an arm end.
int radial_arm_at(int x, int y);
/// Shuttle compartment of a cell: 0 left, 1 right, -1 doorway.
int shuttle_compartment_at(int x);

}  // namespace cheesebench::paradigms
