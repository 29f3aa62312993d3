# Services package: aritmética de corpos finitos e verificações
