# Utils package: erros, texto de elementos, saída e workers
