class Precedence {
  static double total(double[][] m, int rows, int cols) { double t = 0;
    for (int i = 0; i < rows; i++) {
      // every column of row i
      for (int j = 0; j < cols; j++) {
        t += m[i][j];
      }
      // next row
    }
    return t;
  }
}
