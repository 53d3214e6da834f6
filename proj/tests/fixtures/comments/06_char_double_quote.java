char q = '"'; // "
