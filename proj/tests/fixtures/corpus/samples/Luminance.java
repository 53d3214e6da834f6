class Luminance {
  static void compute(java.awt.image.BufferedImage image, int[][] lum, int width, int height) {
    // Compute sum of all channels per pixel
    for (int y = 0; y < height; y++) {
      for (int x = 0; x < width; x++) {
        int pixel = image.getRGB(x, y);
        for (int i = 0; i < 3; i++) {
          lum[x][y] += pixel & 0xff;
          pixel = pixel >> 8;
        }
        lum[x][y] /= 3;
      }
    }
  }
}
