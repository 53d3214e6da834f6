// ends with \
int z;
