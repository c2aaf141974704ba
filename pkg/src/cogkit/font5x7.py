"""Embedded 5x7 bitmap font for the lower-case letter shapes.

Hand-drawn for this project (no external font dependency), so letter
rasterization is bit-exact on every platform.  Each glyph is 7 rows of 5
cells; ``#`` marks an on pixel.
"""

GLYPHS_5X7 = {
    "a": (
        ".....",
        ".....",
        ".###.",
        "....#",
        ".####",
        "#...#",
        ".####",
    ),
    "b": (
        "#....",
        "#....",
        "#.##.",
        "##..#",
        "#...#",
        "##..#",
        "#.##.",
    ),
    "c": (
        ".....",
        ".....",
        ".###.",
        "#....",
        "#....",
        "#...#",
        ".###.",
    ),
    "d": (
        "....#",
        "....#",
        ".##.#",
        "#..##",
        "#...#",
        "#..##",
        ".##.#",
    ),
    "e": (
        ".....",
        ".....",
        ".###.",
        "#...#",
        "#####",
        "#....",
        ".###.",
    ),
    "f": (
        "..##.",
        ".#..#",
        ".#...",
        "###..",
        ".#...",
        ".#...",
        ".#...",
    ),
    "g": (
        ".....",
        ".####",
        "#...#",
        "#...#",
        ".####",
        "....#",
        ".###.",
    ),
    "h": (
        "#....",
        "#....",
        "#.##.",
        "##..#",
        "#...#",
        "#...#",
        "#...#",
    ),
    "i": (
        "..#..",
        ".....",
        ".##..",
        "..#..",
        "..#..",
        "..#..",
        ".###.",
    ),
    "j": (
        "...#.",
        ".....",
        "..##.",
        "...#.",
        "...#.",
        "#..#.",
        ".##..",
    ),
    "k": (
        "#....",
        "#....",
        "#..#.",
        "#.#..",
        "##...",
        "#.#..",
        "#..#.",
    ),
    "l": (
        ".##..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        ".###.",
    ),
    "m": (
        ".....",
        ".....",
        "##.#.",
        "#.#.#",
        "#.#.#",
        "#.#.#",
        "#.#.#",
    ),
    "n": (
        ".....",
        ".....",
        "#.##.",
        "##..#",
        "#...#",
        "#...#",
        "#...#",
    ),
    "o": (
        ".....",
        ".....",
        ".###.",
        "#...#",
        "#...#",
        "#...#",
        ".###.",
    ),
    "p": (
        ".....",
        "####.",
        "#...#",
        "#...#",
        "####.",
        "#....",
        "#....",
    ),
    "q": (
        ".....",
        ".####",
        "#...#",
        "#...#",
        ".####",
        "....#",
        "....#",
    ),
    "r": (
        ".....",
        ".....",
        "#.##.",
        "##...",
        "#....",
        "#....",
        "#....",
    ),
    "s": (
        ".....",
        ".....",
        ".####",
        "#....",
        ".###.",
        "....#",
        "####.",
    ),
    "t": (
        ".#...",
        ".#...",
        "###..",
        ".#...",
        ".#...",
        ".#..#",
        "..##.",
    ),
    "u": (
        ".....",
        ".....",
        "#...#",
        "#...#",
        "#...#",
        "#..##",
        ".##.#",
    ),
    "v": (
        ".....",
        ".....",
        "#...#",
        "#...#",
        "#...#",
        ".#.#.",
        "..#..",
    ),
    "w": (
        ".....",
        ".....",
        "#...#",
        "#.#.#",
        "#.#.#",
        "#.#.#",
        ".#.#.",
    ),
    "x": (
        ".....",
        ".....",
        "#...#",
        ".#.#.",
        "..#..",
        ".#.#.",
        "#...#",
    ),
    "y": (
        ".....",
        "#...#",
        "#...#",
        ".####",
        "....#",
        "#...#",
        ".###.",
    ),
    "z": (
        ".....",
        ".....",
        "####.",
        "...#.",
        "..#..",
        ".#...",
        ".####",
    ),
}
