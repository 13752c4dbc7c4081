"""运行记录数据库的访问能力。"""
