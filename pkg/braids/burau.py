"""
Reduced Burau representation and the knot determinant |Delta(-1)|, an
oracle independent of the R-matrix machinery.
"""

import numpy as np

from .words import stabilize


def burau_generator(strands, index, t=-1.0):
    """Reduced Burau matrix of sigma_index on the given number of strands"""
    size = strands - 1
    matrix = np.eye(size, dtype=complex)
    row = index - 1
    matrix[row, row] = -t
    if row > 0:
        matrix[row, row - 1] = t
    if row < size - 1:
        matrix[row, row + 1] = 1
    return matrix


def burau_matrix(word, t=-1.0):
    size = word.strands - 1
    result = np.eye(size, dtype=complex)
    for letter in word.letters:
        generator = burau_generator(word.strands, abs(letter), t)
        result = result @ (generator if letter > 0 else np.linalg.inv(generator))
    return result


def alexander_at(word, t):
    """
    Delta(t) = det(I - B(t)) (1 - t)/(1 - t^n) up to a unit, B the reduced
    Burau matrix; undefined where t^n = 1 unless n = 1.
    """
    n = word.strands
    size = n - 1
    value = np.linalg.det(np.eye(size) - burau_matrix(word, t)) if size else 1.0
    if n == 1:
        return value
    return value * (1 - t) / (1 - t ** n)


def determinant(word):
    """|Delta(-1)|, evaluated after stabilizing to an odd strand count"""
    if word.strands % 2 == 0:
        word = stabilize(word)
    return int(round(abs(alexander_at(word, -1.0))))
